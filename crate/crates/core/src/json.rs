//! JSON encoding of exact values, regions, patterns, and pattern sources.
//!
//! Scalars encode as `{"a": [num, den], "b": [num, den], "D": root}` with
//! integers written as JSON numbers when they fit in 64 bits and as decimal
//! strings otherwise; the literal grammar (`"3/2+1/2r5"`) and bare integers
//! are accepted on input. Vectors are arrays of scalars, regions a tagged
//! term tree, patterns tagged by `"kind"`. Round-trips are bit-exact, and
//! serialization orders object keys, so equal values serialize identically.

use num_rational::Ratio;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generators::{
    fibonacci_point_set, fibonacci_tiling, fibonacci_word, integers, periodic_word,
    shifted_rows_default, square_lattice, Generator, WindowSource,
};
use crate::geom::Vector;
use crate::pattern::{Comb, Multi, Patch, Pattern, PointSet, Symbolic, Tile, Weight};
use crate::region::Region;
use crate::scalar::{Quad, QuadInt, SqrtVal};

fn parse_err(what: &str, v: &Value) -> Error {
    let mut text = v.to_string();
    if text.len() > 120 {
        text.truncate(120);
        text.push_str("...");
    }
    Error::Parse(format!("expected {what}, got {text}"))
}

fn int_to_json<T: QuadInt>(x: &T) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => json!(x.to_string()),
    }
}

fn int_from_json<T: QuadInt>(v: &Value) -> Result<T> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(parse_err("an integer (number or decimal string)", v)),
    };
    text.parse::<T>().map_err(|_| Error::Parse(format!("bad integer literal {text:?}")))
}

fn ratio_to_json<T: QuadInt>(r: &Ratio<T>) -> Value {
    json!([int_to_json(r.numer()), int_to_json(r.denom())])
}

fn ratio_from_json<T: QuadInt>(v: &Value) -> Result<Ratio<T>> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
        parse_err("a rational as [numerator, denominator]", v)
    })?;
    let num: T = int_from_json(&arr[0])?;
    let den: T = int_from_json(&arr[1])?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Ratio::new(num, den))
}

pub fn scalar_to_json<T: QuadInt>(x: &Quad<T>) -> Value {
    json!({
        "a": ratio_to_json(x.rational_part()),
        "b": ratio_to_json(x.surd_part()),
        "D": x.root(),
    })
}

pub fn scalar_from_json<T: QuadInt>(v: &Value) -> Result<Quad<T>> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => {
            let x: T = int_from_json(v)?;
            let _ = n;
            Ok(Quad::rational(Ratio::from_integer(x)))
        }
        Value::Object(fields) => {
            let a = fields
                .get("a")
                .map(ratio_from_json)
                .transpose()?
                .unwrap_or_else(Ratio::zero);
            let b = fields
                .get("b")
                .map(ratio_from_json)
                .transpose()?
                .unwrap_or_else(Ratio::zero);
            let root = match fields.get("D") {
                Some(d) => d
                    .as_u64()
                    .ok_or_else(|| parse_err("a nonnegative root marker", d))?,
                None => 0,
            };
            if b.is_zero() {
                return Ok(Quad::rational(a));
            }
            Quad::new(a, b, root)
        }
        _ => Err(parse_err("a scalar (literal string or {a, b, D})", v)),
    }
}

/// Exact nonnegative values publish their square: `{"sqrt_of": "1/100"}`.
pub fn sqrt_to_json<T: QuadInt>(x: &SqrtVal<T>) -> Value {
    json!({ "sqrt_of": x.square().to_string() })
}

pub fn sqrt_from_json<T: QuadInt>(v: &Value) -> Result<SqrtVal<T>> {
    let inner = v
        .as_object()
        .and_then(|o| o.get("sqrt_of"))
        .ok_or_else(|| parse_err("{\"sqrt_of\": scalar}", v))?;
    let sq = scalar_from_json(inner)?;
    if sq.is_negative() {
        return Err(Error::Parse(format!("negative square {sq}")));
    }
    Ok(SqrtVal::from_square(sq))
}

pub fn vector_to_json<T: QuadInt>(v: &Vector<T>) -> Value {
    Value::Array(v.coords().iter().map(scalar_to_json).collect())
}

pub fn vector_from_json<T: QuadInt>(v: &Value) -> Result<Vector<T>> {
    let arr = v.as_array().ok_or_else(|| parse_err("a vector as an array of scalars", v))?;
    if arr.is_empty() {
        return Err(Error::Parse("a vector needs at least one coordinate".into()));
    }
    Ok(Vector::new(arr.iter().map(scalar_from_json).collect::<Result<_>>()?))
}

pub fn region_to_json<T: QuadInt>(r: &Region<T>) -> Value {
    match r {
        Region::Empty => json!({ "type": "empty" }),
        Region::All => json!({ "type": "all" }),
        Region::Ball { center, radius } => json!({
            "type": "ball",
            "center": vector_to_json(center),
            "radius": scalar_to_json(radius),
        }),
        Region::Box { lo, hi } => json!({
            "type": "box",
            "lo": vector_to_json(lo),
            "hi": vector_to_json(hi),
        }),
        Region::Points(pts) => json!({
            "type": "points",
            "points": pts.iter().map(vector_to_json).collect::<Vec<_>>(),
        }),
        Region::Union(parts) => json!({
            "type": "union",
            "parts": parts.iter().map(region_to_json).collect::<Vec<_>>(),
        }),
        Region::Intersection(parts) => json!({
            "type": "intersection",
            "parts": parts.iter().map(region_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn region_from_json<T: QuadInt>(v: &Value) -> Result<Region<T>> {
    let obj = v.as_object().ok_or_else(|| parse_err("a region object", v))?;
    let tag = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("a region with a \"type\" tag", v))?;
    let field = |name: &str| -> Result<&Value> {
        obj.get(name).ok_or_else(|| Error::Parse(format!("region {tag:?} needs field {name:?}")))
    };
    match tag {
        "empty" => Ok(Region::Empty),
        "all" => Ok(Region::All),
        "ball" => {
            let radius = scalar_from_json(field("radius")?)?;
            if radius.is_negative() {
                return Err(Error::Parse(format!("negative ball radius {radius}")));
            }
            Ok(Region::ball(vector_from_json(field("center")?)?, radius))
        }
        "box" => Ok(Region::bbox(
            vector_from_json(field("lo")?)?,
            vector_from_json(field("hi")?)?,
        )),
        "points" => {
            let arr = field("points")?
                .as_array()
                .ok_or_else(|| parse_err("an array of vectors", v))?;
            Ok(Region::Points(arr.iter().map(vector_from_json).collect::<Result<_>>()?))
        }
        "union" | "intersection" => {
            let arr = field("parts")?
                .as_array()
                .ok_or_else(|| parse_err("an array of regions", v))?;
            let parts: Vec<Region<T>> =
                arr.iter().map(region_from_json).collect::<Result<_>>()?;
            if tag == "union" {
                Ok(Region::Union(parts))
            } else {
                Ok(Region::Intersection(parts))
            }
        }
        other => Err(Error::Parse(format!("unknown region type {other:?}"))),
    }
}

fn weight_to_json<T: QuadInt>(w: &Weight<T>) -> Value {
    json!({ "re": ratio_to_json(&w.re), "im": ratio_to_json(&w.im) })
}

fn weight_from_json<T: QuadInt>(v: &Value) -> Result<Weight<T>> {
    let obj = v.as_object().ok_or_else(|| parse_err("a weight as {re, im}", v))?;
    let re = obj.get("re").map(ratio_from_json).transpose()?.unwrap_or_else(Ratio::zero);
    let im = obj.get("im").map(ratio_from_json).transpose()?.unwrap_or_else(Ratio::zero);
    Ok(Weight::new(re, im))
}

pub fn pattern_to_json<T: QuadInt>(p: &Pattern<T>) -> Value {
    match p {
        Pattern::Points(ps) => json!({
            "kind": "pointset",
            "dim": ps.dim(),
            "ud_radius": ps.ud_radius().map(scalar_to_json).unwrap_or(Value::Null),
            "points": ps.points().iter().map(vector_to_json).collect::<Vec<_>>(),
        }),
        Pattern::Patch(patch) => json!({
            "kind": "patch",
            "dim": patch.dim(),
            "tiles": patch
                .tiles()
                .iter()
                .map(|t| {
                    json!({
                        "lo": vector_to_json(&t.lo),
                        "hi": vector_to_json(&t.hi),
                        "label": t.label.clone().map(Value::String).unwrap_or(Value::Null),
                    })
                })
                .collect::<Vec<_>>(),
        }),
        Pattern::Symbolic(s) => json!({
            "kind": "symbolic",
            "alphabet": s.alphabet(),
            "letters": s.entries().map(|(pos, l)| json!([pos, l])).collect::<Vec<_>>(),
        }),
        Pattern::Comb(c) => json!({
            "kind": "comb",
            "dim": c.dim(),
            "ud_radius": scalar_to_json(c.ud_radius()),
            "entries": c
                .entries()
                .iter()
                .map(|(x, w)| json!({ "point": vector_to_json(x), "weight": weight_to_json(w) }))
                .collect::<Vec<_>>(),
        }),
        Pattern::Multi(m) => json!({
            "kind": "multi",
            "dim": m.dim(),
            "ud_radius": scalar_to_json(m.joint_ud_radius()),
            "components": m
                .components()
                .iter()
                .map(|comp| comp.iter().map(vector_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn pattern_from_json<T: QuadInt>(v: &Value) -> Result<Pattern<T>> {
    let obj = v.as_object().ok_or_else(|| parse_err("a pattern object", v))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("a pattern with a \"kind\" tag", v))?;
    let field = |name: &str| -> Result<&Value> {
        obj.get(name)
            .ok_or_else(|| Error::Parse(format!("pattern {kind:?} needs field {name:?}")))
    };
    let dim = || -> Result<usize> {
        field("dim")?
            .as_u64()
            .map(|d| d as usize)
            .ok_or_else(|| Error::Parse("pattern dimension must be a nonnegative number".into()))
    };
    let vectors = |v: &Value| -> Result<Vec<Vector<T>>> {
        v.as_array()
            .ok_or_else(|| parse_err("an array of vectors", v))?
            .iter()
            .map(vector_from_json)
            .collect()
    };
    match kind {
        "pointset" => {
            let ud = match obj.get("ud_radius") {
                None | Some(Value::Null) => None,
                Some(s) => Some(scalar_from_json(s)?),
            };
            Ok(Pattern::Points(PointSet::new(dim()?, ud, vectors(field("points")?)?)?))
        }
        "patch" => {
            let tiles = field("tiles")?
                .as_array()
                .ok_or_else(|| parse_err("an array of tiles", v))?
                .iter()
                .map(|t| -> Result<Tile<T>> {
                    let tile = t.as_object().ok_or_else(|| parse_err("a tile object", t))?;
                    let lo = vector_from_json(
                        tile.get("lo").ok_or_else(|| Error::Parse("tile needs \"lo\"".into()))?,
                    )?;
                    let hi = vector_from_json(
                        tile.get("hi").ok_or_else(|| Error::Parse("tile needs \"hi\"".into()))?,
                    )?;
                    let label = match tile.get("label") {
                        None | Some(Value::Null) => None,
                        Some(Value::String(s)) => Some(s.clone()),
                        Some(other) => return Err(parse_err("a string label", other)),
                    };
                    Ok(Tile::new(lo, hi, label))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Pattern::Patch(Patch::new(dim()?, tiles)?))
        }
        "symbolic" => {
            let alphabet = field("alphabet")?
                .as_array()
                .ok_or_else(|| parse_err("an array of letters", v))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| parse_err("a letter string", l))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut letters = BTreeMap::new();
            for entry in field("letters")?
                .as_array()
                .ok_or_else(|| parse_err("an array of [position, letter] pairs", v))?
            {
                let pair = entry
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| parse_err("a [position, letter] pair", entry))?;
                let pos = pair[0]
                    .as_i64()
                    .ok_or_else(|| parse_err("an integer position", &pair[0]))?;
                let letter = pair[1]
                    .as_str()
                    .ok_or_else(|| parse_err("a letter string", &pair[1]))?;
                if letters.insert(pos, letter.to_string()).is_some() {
                    return Err(Error::Parse(format!("position {pos} assigned twice")));
                }
            }
            Ok(Pattern::Symbolic(Symbolic::new(alphabet, letters)?))
        }
        "comb" => {
            let ud = scalar_from_json(field("ud_radius")?)?;
            let entries = field("entries")?
                .as_array()
                .ok_or_else(|| parse_err("an array of comb entries", v))?
                .iter()
                .map(|e| -> Result<(Vector<T>, Weight<T>)> {
                    let entry = e.as_object().ok_or_else(|| parse_err("a comb entry", e))?;
                    let point = vector_from_json(
                        entry
                            .get("point")
                            .ok_or_else(|| Error::Parse("comb entry needs \"point\"".into()))?,
                    )?;
                    let weight = weight_from_json(
                        entry
                            .get("weight")
                            .ok_or_else(|| Error::Parse("comb entry needs \"weight\"".into()))?,
                    )?;
                    Ok((point, weight))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Pattern::Comb(Comb::new(dim()?, ud, entries)?))
        }
        "multi" => {
            let ud = scalar_from_json(field("ud_radius")?)?;
            let components = field("components")?
                .as_array()
                .ok_or_else(|| parse_err("an array of component point lists", v))?
                .iter()
                .map(vectors)
                .collect::<Result<Vec<_>>>()?;
            Ok(Pattern::Multi(Multi::new(dim()?, ud, components)?))
        }
        other => Err(Error::Parse(format!("unknown pattern kind {other:?}"))),
    }
}

fn generator_from_json<T: QuadInt>(v: &Value) -> Result<Generator<T>> {
    let obj = v.as_object().ok_or_else(|| parse_err("a generator object", v))?;
    let preset = obj
        .get("preset")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("a generator with a \"preset\" tag", v))?;
    match preset {
        "integers" => Ok(integers()),
        "square-lattice" => Ok(square_lattice()),
        "fibonacci-point-set" => Ok(fibonacci_point_set()),
        "fibonacci-tiling" => Ok(fibonacci_tiling()),
        "fibonacci-word" => Ok(fibonacci_word()),
        "shifted-rows" => Ok(shifted_rows_default()),
        "periodic-word" => {
            let word = obj
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("periodic-word needs a \"word\" array".into()))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| parse_err("a letter string", l))
                })
                .collect::<Result<Vec<_>>>()?;
            periodic_word(word)
        }
        "periodic" => {
            let basis = obj
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("periodic needs a \"basis\" array".into()))?
                .iter()
                .map(vector_from_json)
                .collect::<Result<Vec<_>>>()?;
            let motif = pattern_from_json(
                obj.get("motif")
                    .ok_or_else(|| Error::Parse("periodic needs a \"motif\" pattern".into()))?,
            )?;
            Generator::periodic(basis, motif)
        }
        other => Err(Error::Parse(format!("unknown generator preset {other:?}"))),
    }
}

/// Known preset names accepted by [`source_from_json`] and the command line.
pub const GENERATOR_PRESETS: &[&str] = &[
    "integers",
    "square-lattice",
    "fibonacci-point-set",
    "fibonacci-tiling",
    "fibonacci-word",
    "shifted-rows",
    "periodic-word",
    "periodic",
];

pub fn generator_preset<T: QuadInt>(name: &str) -> Result<Generator<T>> {
    generator_from_json(&json!({ "preset": name }))
}

/// A pattern source: either `{"pattern": ...}` or
/// `{"generator": {"preset": ...}, "shift": [...]}` with the shift optional.
pub fn source_from_json<T: QuadInt>(v: &Value) -> Result<WindowSource<T>> {
    let obj = v.as_object().ok_or_else(|| parse_err("a pattern source object", v))?;
    match (obj.get("pattern"), obj.get("generator")) {
        (Some(p), None) => Ok(WindowSource::finite(pattern_from_json(p)?)),
        (None, Some(g)) => {
            let source = WindowSource::generated(generator_from_json(g)?);
            match obj.get("shift") {
                None | Some(Value::Null) => Ok(source),
                Some(s) => Ok(source.act(&vector_from_json(s)?)),
            }
        }
        _ => Err(parse_err("exactly one of \"pattern\" or \"generator\"", v)),
    }
}

/// Serializes a value to a stable string: sorted object keys, two-space
/// indentation, one trailing newline.
pub fn to_stable_string(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("serde_json never fails on Value");
    text.push('\n');
    text
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Quad<BigInt>;

    fn lit(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> Vector<BigInt> {
        Vector::one_d(lit(s))
    }

    #[test]
    fn scalars_round_trip_bit_exactly() {
        for text in ["0", "-7/3", "3/2+1/2r5", "-r2", "1/3-2/5r3"] {
            let x = lit(text);
            let v = scalar_to_json(&x);
            assert_eq!(scalar_from_json::<BigInt>(&v).unwrap(), x);
        }
        let huge = Quad::<BigInt>::rational(Ratio::new(
            BigInt::from(10).pow(40),
            BigInt::from(3),
        ));
        let v = scalar_to_json(&huge);
        assert_eq!(scalar_from_json::<BigInt>(&v).unwrap(), huge);
        assert!(v["a"][0].is_string());
    }

    #[test]
    fn scalar_literals_and_numbers_parse() {
        assert_eq!(scalar_from_json::<BigInt>(&json!("3/2+1/2r5")).unwrap(), lit("3/2+1/2r5"));
        assert_eq!(scalar_from_json::<BigInt>(&json!(-4)).unwrap(), lit("-4"));
        assert!(scalar_from_json::<BigInt>(&json!(true)).is_err());
        assert!(scalar_from_json::<BigInt>(&json!({ "a": [1, 0] })).is_err());
    }

    #[test]
    fn sqrt_values_publish_their_square() {
        let d = SqrtVal::from_square(lit("1/100"));
        let v = sqrt_to_json(&d);
        assert_eq!(v, json!({ "sqrt_of": "1/100" }));
        assert_eq!(sqrt_from_json::<BigInt>(&v).unwrap(), d);
        assert!(sqrt_from_json::<BigInt>(&json!({ "sqrt_of": "-1" })).is_err());
    }

    #[test]
    fn regions_round_trip_as_term_trees() {
        let region: Region<BigInt> = Region::ball0(1, lit("5"))
            .union(Region::interval(lit("-2"), lit("-1")))
            .intersect(Region::bbox(pt("-10"), pt("10")));
        let v = region_to_json(&region);
        assert_eq!(region_from_json::<BigInt>(&v).unwrap(), region);
        assert!(region_from_json::<BigInt>(&json!({ "type": "wedge" })).is_err());
    }

    #[test]
    fn patterns_of_every_kind_round_trip() {
        let points = Pattern::Points(
            PointSet::<BigInt>::new(1, Some(lit("1/2")), vec![pt("0"), pt("r5")]).unwrap(),
        );
        let patch = Pattern::Patch(
            Patch::new(
                1,
                vec![
                    Tile::new(pt("0"), pt("1"), Some("a".into())),
                    Tile::new(pt("1"), pt("1+r5"), None),
                ],
            )
            .unwrap(),
        );
        let symbolic = {
            let mut letters = BTreeMap::new();
            letters.insert(-1i64, "b".to_string());
            letters.insert(3i64, "a".to_string());
            Pattern::Symbolic(Symbolic::new(vec!["a".into(), "b".into()], letters).unwrap())
        };
        let comb = Pattern::Comb(
            Comb::new(
                1,
                lit("1/2"),
                vec![
                    (pt("0"), Weight::new(Ratio::new(1.into(), 2.into()), Ratio::from_integer((-3).into()))),
                    (pt("2"), Weight::one()),
                ],
            )
            .unwrap(),
        );
        let multi = Pattern::Multi(
            Multi::new(1, lit("1/2"), vec![vec![pt("0")], vec![pt("0"), pt("3")]]).unwrap(),
        );
        for p in [points, patch, symbolic, comb, multi] {
            let v = pattern_to_json(&p);
            assert_eq!(pattern_from_json::<BigInt>(&v).unwrap(), p, "kind {:?}", p.kind());
        }
    }

    #[test]
    fn sources_parse_patterns_and_presets() {
        let z = source_from_json::<BigInt>(&json!({ "generator": { "preset": "integers" } }))
            .unwrap();
        let shifted = source_from_json::<BigInt>(&json!({
            "generator": { "preset": "integers" },
            "shift": [{ "a": [1, 10], "b": [0, 1], "D": 0 }],
        }))
        .unwrap();
        assert_eq!(shifted, z.act(&pt("1/10")));

        let finite = source_from_json::<BigInt>(&json!({
            "pattern": { "kind": "pointset", "dim": 1, "ud_radius": null, "points": [[ "0" ]] },
        }))
        .unwrap();
        assert!(finite.is_finite());

        assert!(source_from_json::<BigInt>(&json!({})).is_err());
        assert!(
            source_from_json::<BigInt>(&json!({ "generator": { "preset": "nonsense" } })).is_err()
        );
    }

    #[test]
    fn stable_serialization_is_deterministic_and_sorted() {
        let v = json!({ "zeta": 1, "alpha": { "d": 2, "c": 3 } });
        let text = to_stable_string(&v);
        assert_eq!(text, to_stable_string(&v));
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(text.ends_with('\n'));
    }
}
