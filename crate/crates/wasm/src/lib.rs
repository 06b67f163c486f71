//! wasm-bindgen surface for the browser demo. Three operations, each taking
//! a double braid word as a JSON array of nonzero signed integers.

use braidvar::cli;
use braidvar::seeds::SeedPipeline;
use braidvar::weave;
use rand_like::fixed_rng;
use wasm_bindgen::prelude::*;

fn parse(word: &str) -> Result<(braidvar::CartanData, braidvar::DoubleBraidWord), JsValue> {
    let b = cli::parse_word(word).map_err(err)?;
    let cartan = cli::resolve_cartan(None, &b).map_err(err)?;
    Ok((cartan, b))
}

fn err(e: braidvar::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// SVG rendering of the double inductive weave.
#[wasm_bindgen]
pub fn weave_svg(word: &str) -> Result<String, JsValue> {
    let (cartan, b) = parse(word)?;
    let w = weave::build_for_word(&cartan, &b).map_err(err)?;
    Ok(weave::render_svg(&w))
}

/// Lusztig-data table (one row per depth) as JSON.
#[wasm_bindgen]
pub fn lusztig_table(word: &str) -> Result<String, JsValue> {
    let (cartan, b) = parse(word)?;
    cli::cmd_lusztig_table(&cartan, &b, cli::Format::Json, 0).map_err(err)
}

/// Cluster seed plus the outcome of the weave/Deodhar coincidence checks.
#[wasm_bindgen]
pub fn seed_report(word: &str) -> Result<String, JsValue> {
    let (cartan, b) = parse(word)?;
    let pipeline = SeedPipeline::new(&cartan, &b).map_err(err)?;
    let seed = pipeline.seed().map_err(err)?;
    let mut rng = fixed_rng();
    let report = braidvar::seeds::verify_main_theorem(&cartan, &b, 8, &mut rng).map_err(err)?;
    let mut v = seed.to_json();
    v["word"] = serde_json::json!(b.0);
    v["quiver_dot"] = serde_json::json!(seed.quiver_dot());
    v["variables_x_side"] = serde_json::json!(seed
        .variables_x_side(&pipeline.geometry.params.phi)
        .iter()
        .map(|p| p.to_string_with(&|i| format!("z'{}", i + 1)))
        .collect::<Vec<_>>());
    v["checks"] = serde_json::json!({
        "tori": report.torus_ok,
        "variables": report.h_identity_ok,
        "forms": report.forms_equal,
    });
    Ok(format!("{v:#}"))
}

mod rand_like {
    use rand::SeedableRng;

    pub fn fixed_rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: &str = "[-2,1,2,1,-1,1,2]";

    #[test]
    fn svg_output() {
        let svg = weave_svg(RUNNING).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(weave_svg("[0]").is_err());
    }

    #[test]
    fn table_output() {
        let text = lusztig_table(RUNNING).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 7);
    }

    #[test]
    fn seed_output() {
        let text = seed_report(RUNNING).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["checks"]["forms"], serde_json::json!(true));
        assert_eq!(v["variables"].as_array().unwrap().len(), 4);
    }
}
