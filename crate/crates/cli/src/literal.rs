//! Exact literal grammars for command-line flags.
//!
//! Scalars use the library's literal syntax (`5`, `-3/2`, `1/2+1/2r5`),
//! vectors are comma-separated scalars, and regions are `all`, `empty`,
//! `ball:<center>:<radius>`, `box:<lo>:<hi>`, or `@<path>` naming a region
//! JSON file. Scalar literals contain no commas or colons, so the splits
//! are unambiguous. No floats are parsed anywhere.

use std::path::Path;

use patternspace::json::generator_preset;
use patternspace::{periodic_word, region_from_json, Generator, Int, Point, Region, Scalar, Vector};

use crate::{read_json, Failure};

pub fn scalar(text: &str) -> Result<Scalar, Failure> {
    text.trim()
        .parse()
        .map_err(|err| Failure::Invalid(format!("scalar literal {text:?}: {err}")))
}

/// A comma-separated list of scalars.
pub fn scalar_list(text: &str) -> Result<Vec<Scalar>, Failure> {
    text.split(',').map(scalar).collect()
}

/// A vector literal: comma-separated coordinates.
pub fn vector(text: &str) -> Result<Point, Failure> {
    Ok(Vector::new(scalar_list(text)?))
}

/// A region literal.
pub fn region(text: &str) -> Result<Region<Int>, Failure> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        return Ok(region_from_json(&read_json(Path::new(path))?)?);
    }
    if text == "all" {
        return Ok(Region::All);
    }
    if text == "empty" {
        return Ok(Region::Empty);
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        ["ball", center, radius] => {
            let radius = scalar(radius)?;
            if radius.is_negative() {
                return Err(Failure::Invalid(format!("ball radius must be nonnegative: {text:?}")));
            }
            Ok(Region::ball(vector(center)?, radius))
        }
        ["box", lo, hi] => {
            let lo = vector(lo)?;
            let hi = vector(hi)?;
            if lo.dim() != hi.dim() {
                return Err(Failure::Invalid(format!(
                    "box corners must share a dimension: {text:?}"
                )));
            }
            Ok(Region::bbox(lo, hi))
        }
        _ => Err(Failure::Invalid(format!(
            "region literal {text:?}: expected all, empty, ball:<center>:<radius>, \
             box:<lo>:<hi>, or @<file.json>"
        ))),
    }
}

/// A shift grid literal `<count>:<step-vector>`: the shifts are k*step for
/// 0 <= k < count.
pub fn grid(text: &str) -> Result<(usize, Point), Failure> {
    let Some((count_text, step_text)) = text.split_once(':') else {
        return Err(Failure::Invalid(format!(
            "grid literal {text:?}: expected <count>:<step-vector>"
        )));
    };
    let count: usize = count_text
        .trim()
        .parse()
        .map_err(|_| Failure::Invalid(format!("grid count {count_text:?} must be an integer")))?;
    if count == 0 {
        return Err(Failure::Invalid("a grid needs at least one shift".into()));
    }
    Ok((count, vector(step_text)?))
}

/// A generator preset name, with `fibonacci` as an alias for the point set
/// and `periodic:<letter,letter,...>` for a periodic word.
pub fn preset(text: &str) -> Result<Generator<Int>, Failure> {
    let text = text.trim();
    let (name, payload) = match text.split_once(':') {
        Some((name, payload)) => (name, Some(payload)),
        None => (text, None),
    };
    match (name, payload) {
        ("fibonacci", None) => Ok(generator_preset("fibonacci-point-set")?),
        ("periodic" | "periodic-word", Some(letters)) => {
            Ok(periodic_word(letters.split(',').map(str::to_string).collect())?)
        }
        ("periodic" | "periodic-word", None) => Err(Failure::Invalid(
            "the periodic preset needs letters, e.g. periodic:a,b,b".into(),
        )),
        (other, None) => Ok(generator_preset(other)?),
        (other, Some(_)) => {
            Err(Failure::Invalid(format!("preset {other:?} does not take a : payload")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn scalars_vectors_and_lists_parse_exactly() {
        assert_eq!(scalar(" -3/2 ").unwrap(), lit("-3/2"));
        assert_eq!(scalar("1/2+1/2r5").unwrap(), lit("1/2+1/2r5"));
        assert!(scalar("1.5").is_err());
        assert_eq!(vector("0,1/4").unwrap(), Vector::new(vec![lit("0"), lit("1/4")]));
        assert_eq!(scalar_list("2,4,6").unwrap(), vec![lit("2"), lit("4"), lit("6")]);
        assert!(vector("").is_err());
    }

    #[test]
    fn region_literals_cover_every_form() {
        assert_eq!(region("all").unwrap(), Region::All);
        assert_eq!(region("empty").unwrap(), Region::Empty);
        assert_eq!(region("ball:0:5").unwrap(), Region::ball0(1, lit("5")));
        assert_eq!(
            region("box:-1,-1:2,2").unwrap(),
            Region::bbox(
                Vector::new(vec![lit("-1"), lit("-1")]),
                Vector::new(vec![lit("2"), lit("2")])
            )
        );
        assert!(region("ball:0:-1").is_err());
        assert!(region("box:0:1,2").is_err());
        assert!(region("disk:0:1").is_err());
    }

    #[test]
    fn grids_split_count_from_step() {
        let (count, step) = grid("256:1/256").unwrap();
        assert_eq!(count, 256);
        assert_eq!(step, Vector::one_d(lit("1/256")));
        let (count, step) = grid("8:0,1").unwrap();
        assert_eq!(count, 8);
        assert_eq!(step.dim(), 2);
        assert!(grid("0:1").is_err());
        assert!(grid("8").is_err());
    }

    #[test]
    fn presets_resolve_aliases_and_payloads() {
        assert_eq!(preset("fibonacci").unwrap().kind(), preset("fibonacci-point-set").unwrap().kind());
        assert!(preset("integers").is_ok());
        assert!(preset("periodic:a,b,b").is_ok());
        assert!(preset("periodic").is_err());
        assert!(preset("integers:5").is_err());
        assert!(preset("unknown").is_err());
    }
}
