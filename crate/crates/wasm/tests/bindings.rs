use bs_demo::{classify_grid, normalize, weight_profile};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn normalize_returns_json() {
    let v = parse(normalize(2, 3, "T a^2 t"));
    assert_eq!(v["normal_form"], "a^3");
    assert_eq!(v["is_identity"], false);
    let v = parse(normalize(1, 2, "t^-1 a t a^-2"));
    assert_eq!(v["is_identity"], true);
}

#[test]
fn errors_are_reported_in_band() {
    assert!(parse(normalize(0, 3, "a"))["error"].as_str().unwrap().contains("nonzero"));
    assert!(parse(normalize(2, 3, "a^"))["error"].is_string());
    assert!(parse(normalize(1, 2, &format!("a^{}", "9".repeat(1000))))["error"].is_string());
    assert!(parse(classify_grid(0, 3))["error"].is_string());
}

#[test]
fn grid_has_one_row_per_cell() {
    let v = parse(classify_grid(3, 2));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3 * 4);
    assert_eq!(rows[0]["m"], 1);
    assert!(rows.iter().all(|r| r["rf"].is_boolean()));
}

#[test]
fn weight_profile_lists_quotient_images() {
    let v = parse(weight_profile(-1, "a^8"));
    assert_eq!(v["weight"], "4");
    let v = parse(weight_profile(3, "a^2"));
    assert_eq!(v["weight"], "2");
    assert_eq!(v["quotient_images"][0]["residue"], "1");
    let v = parse(weight_profile(2, "a"));
    assert_eq!(v["weight"], "omega");
}
