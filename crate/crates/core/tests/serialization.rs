use lorenzkit::kneading::cutting_data_symbolic;
use lorenzkit::maps::{tent_symmetric, MapSpec};
use lorenzkit::outside::{accessibility_certificate, BackwardOrbit};
use lorenzkit::periodic::enumerate_periods;
use lorenzkit::rotation::rotation_number_cutting;
use lorenzkit::symbolic::SymbolSeq;
use lorenzkit::ExactScalar;
use serde_json::{json, Value};

fn w(s: &str) -> SymbolSeq {
    s.parse().unwrap()
}

#[test]
fn map_spec_round_trip() {
    let f = tent_symmetric("1.8".parse().unwrap()).unwrap();
    let js = serde_json::to_value(&f).unwrap();
    assert_eq!(js["family"], "tent-symmetric");
    assert_eq!(js["parameter"], "9/5");
    let back: MapSpec = serde_json::from_value(js).unwrap();
    assert_eq!(back, f);
}

#[test]
fn word_strings() {
    for s in ["10(011)", "(10)", "1011", "1(0)"] {
        let js = serde_json::to_value(w(s)).unwrap();
        assert_eq!(js, Value::String(s.to_string()));
        let back: SymbolSeq = serde_json::from_value(js).unwrap();
        assert_eq!(back, w(s));
    }
}

#[test]
fn period_report_schema() {
    let rep = enumerate_periods(&tent_symmetric(ExactScalar::from(2)).unwrap(), 2).unwrap();
    let js = serde_json::to_value(&rep).unwrap();
    assert_eq!(
        js,
        json!({
            "map": "tent(2)",
            "N": 2,
            "periods": {
                "1": [{"x": "0", "orientation": 1}, {"x": "2/3", "orientation": -1}],
                "2": [{"x": "2/5", "orientation": -1}, {"x": "4/5", "orientation": -1}]
            }
        })
    );
}

#[test]
fn rotation_result_schema() {
    let r = rotation_number_cutting(&w("10011011011101"), 20).unwrap();
    let js = serde_json::to_value(&r).unwrap();
    assert_eq!(js["status"], "exact-hit");
    assert_eq!(js["alpha"], "2/3");
    assert_eq!(js["S_K"], 3);
    assert_eq!(js["prime_end"], "1/3");
    let g = rotation_number_cutting(&w("1011"), 4).unwrap();
    let ga = serde_json::to_value(&g).unwrap();
    assert!(ga["alpha"].is_array() && ga["K"].is_null());
}

#[test]
fn cutting_data_keys() {
    let d = cutting_data_symbolic(&w("(101)"), 12).unwrap();
    let js = serde_json::to_value(&d).unwrap();
    assert_eq!(js["S"], json!([1, 2, 4, 5, 7, 8, 10, 11]));
    assert!(js.get("Shat").is_some() && js.get("Q").is_some() && js.get("Qhat").is_some());
}

#[test]
fn certificate_schema() {
    let o = BackwardOrbit::new(ExactScalar::from(2), vec![ExactScalar::zero(); 3]).unwrap();
    let c = accessibility_certificate(&o, 0).unwrap();
    let js = serde_json::to_value(&c).unwrap();
    assert_eq!(js["status"], "certified-lift");
    assert_eq!(js["lift"], json!(["0", "0", "0"]));
    assert_eq!(js["N"], 0);
    assert_eq!(js["M"], 2);
}
