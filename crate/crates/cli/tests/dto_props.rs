use flt_cli::dto::{CheckReport, ErratumNote, GoldenDiff, TableReport, TableRow, SCHEMA};
use flt_cli::render::{self, Format};
use flt_core::exactmath::poly::parse_poly;
use flt_core::fltscreen::check_assumption;
use flt_core::numfield::build_field;
use proptest::prelude::*;

fn row() -> impl Strategy<Value = TableRow> {
    ("[a-z0-9^*+ -]{1,20}", 1u64..1_000_000, 1u64..1000, "p\\^3|p1 p2\\^2|p1 p2", "[a-z-]{0,30}").prop_map(
        |(poly, abs_disc, t, ramification, pattern)| TableRow { poly, abs_disc, t, ramification, pattern },
    )
}

fn report() -> impl Strategy<Value = TableReport> {
    (
        prop::collection::vec(row(), 0..6),
        prop::collection::vec(".{0,12}", 0..3),
        any::<u64>(),
        any::<bool>(),
        prop::collection::vec(".{0,16}", 0..3),
    )
        .prop_map(|(rows, inconclusive, max_disc, with_diff, mismatches)| TableReport {
            schema: SCHEMA,
            max_disc,
            certification: "unconditional".into(),
            degree: 3,
            fields_enumerated: rows.len() * 3,
            diff: with_diff.then(|| GoldenDiff {
                passes: mismatches.is_empty(),
                expected_rows: rows.len(),
                matched: rows.len(),
                errata: vec![ErratumNote { abs_disc: 993, listed_poly: "a".into(), corrected_poly: "b".into() }],
                mismatches,
            }),
            rows,
            inconclusive,
        })
}

proptest! {
    #[test]
    fn table_report_json_round_trip(r in report()) {
        let s = render::json(&r);
        let back: TableReport = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(render::json(&back), s);
    }

    #[test]
    fn table_csv_has_one_line_per_row(r in report()) {
        let s = render::table(&r, Format::Csv);
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let recs: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
        prop_assert_eq!(recs.len(), r.rows.len());
        for (rec, row) in recs.iter().zip(&r.rows) {
            prop_assert_eq!(&rec[0], row.poly.as_str());
            prop_assert_eq!(rec[1].parse::<u64>().unwrap(), row.abs_disc);
        }
    }

    #[test]
    fn markdown_table_is_rectangular(r in report()) {
        let s = render::table(&r, Format::Markdown);
        let body: Vec<&str> = s.lines().take_while(|l| l.starts_with('|')).collect();
        prop_assert_eq!(body.len(), r.rows.len() + 2);
    }

    #[test]
    fn check_report_round_trip(b in -30i64..30, c in -30i64..30) {
        let Ok(f) = parse_poly(&format!("x^3 + {b}*x + {c}")) else { return Ok(()) };
        let Ok(k) = build_field(&f) else { return Ok(()) };
        let r = CheckReport::new(&check_assumption(&k));
        let back: CheckReport = serde_json::from_str(&render::json(&r)).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn flatten_uses_dotted_paths() {
    let v = serde_json::json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": "x"}]});
    let kv = render::flatten(&v);
    assert_eq!(
        kv,
        vec![
            ("a.b".to_string(), "1".to_string()),
            ("a.c".to_string(), "[1,2]".to_string()),
            ("d.0.e".to_string(), "x".to_string()),
        ]
    );
}

#[test]
fn output_is_deterministic() {
    let a = flt_cli::main_with_args(["flt", "--no-cache", "table", "--max-disc", "400"]);
    let b = flt_cli::main_with_args(["flt", "--no-cache", "--threads", "2", "table", "--max-disc", "400"]);
    assert_eq!(a.2, 0);
    assert_eq!(a, b);
}
