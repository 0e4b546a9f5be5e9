use p3bundles_web::{classify_grid_json, cohomology_table_json, moduli_report_json, MAX_SIDE};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn classify_grid_marks_the_cubic_exclusion() {
    let grid = parse(classify_grid_json(3, 3, 4).unwrap());
    let rows = grid["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2][1]["status"], "NotStable");
    assert_eq!(rows[2][1]["reason"], "k=3,a=2,b=1 exclusion");
    assert_eq!(rows[2][3]["status"], "Stable");
}

#[test]
fn cohomology_table_is_centred() {
    let table = parse(cohomology_table_json(4, 3).unwrap());
    let rows = table["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    let cell = &rows[3 + 2][3 + 3];
    assert_eq!((cell["a"].as_i64(), cell["b"].as_i64()), (Some(2), Some(3)));
    assert_eq!(cell["h0"], 16);
    assert_eq!(cell["h1"], 0);
}

#[test]
fn moduli_reports_match_known_values() {
    assert_eq!(parse(moduli_report_json(2, 2, 0, 2).unwrap())["dim_m"], 5);
    assert_eq!(parse(moduli_report_json(3, 3, 2, 3).unwrap())["dim_y"], 52);
    assert_eq!(parse(moduli_report_json(2, 4, 0, 5).unwrap())["h1_end"], serde_json::json!([85, 94]));
}

#[test]
fn bad_inputs_are_errors() {
    assert!(classify_grid_json(3, 3, MAX_SIDE + 1).is_err());
    assert!(cohomology_table_json(1, 2).is_err());
    assert!(moduli_report_json(4, 3, 1, 1).is_err());
    assert!(moduli_report_json(3, 3, 2, 1).is_err());
}
