//! Browser bindings for the 3D PGA demo page.
//!
//! Every export takes plain strings and returns a JSON string, either
//! `{"ok": …}` or `{"error": "…"}`, so the page needs no glue beyond
//! `JSON.parse`.

use gacalc_core::pga3d::{self, Plane, PointP};
use gacalc_core::{expr, playfair, Algebra, Rational, Scalar};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

type Q = Rational;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": e }),
    }
    .to_string()
}

fn parse_list<S: Scalar>(src: &str, len: usize, what: &str) -> Result<Vec<S>, String> {
    let items: Vec<&str> = src.split(',').map(str::trim).collect();
    if items.len() != len {
        return Err(format!("{what} needs {len} comma-separated numbers, got {}", items.len()));
    }
    items.iter().map(|s| S::parse_literal(s).ok_or_else(|| format!("{what}: cannot read {s:?} as a number"))).collect()
}

fn point<S: Scalar>(src: &str) -> Result<PointP<S>, String> {
    let c = parse_list::<S>(src, 3, "point")?;
    let [x, y, z] = <[S; 3]>::try_from(c).expect("length checked");
    Ok(PointP::new(x, y, z))
}

fn plane<S: Scalar>(src: &str) -> Result<Plane<S>, String> {
    let c = parse_list::<S>(src, 4, "plane")?;
    Plane::new(gacalc_core::Vector(c)).map_err(|e| e.to_string())
}

pub fn decompose_at(src: &str, at: &str) -> Result<Value, String> {
    let alg = Algebra::<Q>::pga3();
    let x = expr::parse_eval(src, &alg).map_err(|e| e.to_string())?;
    let comp = pga3d::point_complement(&point::<Q>(at)?);
    let s = playfair::decompose(&x, &comp).map_err(|e| e.to_string())?;
    Ok(json!({
        "input": expr::print(&x),
        "at_point": expr::print(&s.at_w),
        "at_infinity": expr::print(&s.ideal_part()),
        "cofactor": expr::print(&s.ideal_cofactor),
    }))
}

pub fn parallel(at: &str, through: &str) -> Result<Value, String> {
    let p = point::<Q>(at)?;
    let out = pga3d::parallel_through(&p, &plane::<Q>(through)?);
    Ok(json!({
        "plane": out.to_string(),
        "normal": out.normal().map(|c| c.to_f64()),
        "offset": out.offset().to_f64(),
        "incident": pga3d::incident(&p, &out),
    }))
}

pub fn angle(first: &str, second: &str) -> Result<Value, String> {
    let (u, v) = (plane::<f64>(first)?, plane::<f64>(second)?);
    let theta = pga3d::dihedral_angle(&u, &v);
    Ok(json!({
        "radians": theta,
        "degrees": theta.to_degrees(),
        "bilinear": pga3d::bilinear(&u, &v),
    }))
}

/// Split `expr` into its part at the point `x,y,z` and its part at infinity.
#[wasm_bindgen]
pub fn decompose(expr: &str, point: &str) -> String {
    respond(decompose_at(expr, point))
}

/// The plane through `x,y,z` parallel to `v0,v1,v2,v3`.
#[wasm_bindgen]
pub fn parallel_through(point: &str, plane: &str) -> String {
    respond(parallel(point, plane))
}

/// Angle between two planes given as `v0,v1,v2,v3`.
#[wasm_bindgen]
pub fn dihedral_angle(plane1: &str, plane2: &str) -> String {
    respond(angle(plane1, plane2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn decomposes_at_a_point() {
        let v = parse(decompose("2*e0 + e1 + 3*e01", "0,0,0"));
        assert_eq!(v["ok"]["at_point"], "e1");
        assert_eq!(v["ok"]["cofactor"], "2 - 3*e1");
        let v = parse(decompose("e1", "1,0,0"));
        assert_eq!(v["ok"]["at_point"], "-e0 + e1");
        assert_eq!(v["ok"]["at_infinity"], "e0");
    }

    #[test]
    fn parallel_plane_meets_the_point() {
        let v = parse(parallel_through("0,0,2", "1,0,0,1"));
        assert_eq!(v["ok"]["plane"], "-2,0,0,1");
        assert_eq!(v["ok"]["incident"], true);
        let v = parse(parallel_through("1/2,1/3,-1", "5,1,2,3"));
        assert_eq!(v["ok"]["incident"], true);
    }

    #[test]
    fn angle_between_planes() {
        let v = parse(dihedral_angle("0,1,0,0", "3,0,1,0"));
        assert!((v["ok"]["degrees"].as_f64().unwrap() - 90.0).abs() < 1e-12);
    }

    #[test]
    fn errors_are_reported_as_json() {
        assert!(parse(decompose("e9", "0,0,0"))["error"].as_str().unwrap().contains("e9"));
        assert!(parse(parallel_through("0,0", "1,0,0,1"))["error"].is_string());
        assert!(parse(dihedral_angle("1,0,0,0", "0,1,0,0"))["error"].is_string());
    }
}
