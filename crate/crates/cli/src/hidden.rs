//! The `--hidden` mini-language: `xpower:i`, `xpowery:i`, `cyclicxy:t,j`,
//! `gens:[(a,b),...]`, `full`, `trivial`, `random`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdp_hsp::hsp_zm::{ZmElement, ZmGroupSpec};
use sdp_hsp::reference::{closure, ElementSet};
use sdp_hsp::sdp_group::{Element, FiniteGroup, GroupSpec, SubgroupDesc};
use sdp_hsp::{Error, Result};

/// A parsed hidden subgroup with its canonical spelling.
pub struct Hidden<E> {
    pub spelling: String,
    pub generators: Vec<E>,
    pub elements: ElementSet<E>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn numbers(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad(format!("expected an integer, got {t:?}"))))
        .collect()
}

/// Tuples of `gens:[(..),(..)]`, each of length `width`.
fn tuples(body: &str, width: usize) -> Result<Vec<Vec<u64>>> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("gens must be written gens:[(..),...]"))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let open = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected '(' at {rest:?}")))?;
        let close = open.find(')').ok_or_else(|| bad("unclosed '('"))?;
        let t = numbers(&open[..close])?;
        if t.len() != width {
            return Err(bad(format!("tuple {:?} has {} entries, expected {width}", &open[..close], t.len())));
        }
        out.push(t);
        rest = &open[close + 1..];
    }
    Ok(out)
}

/// Mini-language spelling of a structural subgroup.
pub fn desc_spelling(d: &SubgroupDesc) -> String {
    match d {
        SubgroupDesc::XPower(i) => format!("xpower:{i}"),
        SubgroupDesc::XPowerY(i) => format!("xpowery:{i}"),
        SubgroupDesc::CyclicXY { t, j } => format!("cyclicxy:{t},{j}"),
        SubgroupDesc::Generators(g) => {
            let parts: Vec<String> = g.iter().map(|e| format!("({},{})", e.a, e.b)).collect();
            format!("gens:[{}]", parts.join(","))
        }
    }
}

fn from_desc(g: &GroupSpec, d: SubgroupDesc) -> Result<Hidden<Element>> {
    d.validate(g)?;
    Ok(Hidden { spelling: desc_spelling(&d), generators: d.generators(g)?, elements: d.to_elements(g)? })
}

pub fn parse_p(g: &GroupSpec, spec: &str, seed: u64) -> Result<Hidden<Element>> {
    let spec = spec.trim();
    let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
    let r = g.r();
    let one = |body: &str| -> Result<u32> {
        match numbers(body)?.as_slice() {
            [i] => u32::try_from(*i).map_err(|_| bad("index too large")),
            _ => Err(bad(format!("{head} takes one index"))),
        }
    };
    match head {
        "xpower" => from_desc(g, SubgroupDesc::XPower(one(body)?)),
        "xpowery" => from_desc(g, SubgroupDesc::XPowerY(one(body)?)),
        "cyclicxy" => match numbers(body)?.as_slice() {
            [t, j] => from_desc(g, SubgroupDesc::CyclicXY { t: *t, j: u32::try_from(*j).map_err(|_| bad("index too large"))? }),
            _ => Err(bad("cyclicxy takes t,j")),
        },
        "gens" => {
            let gens = tuples(body, 2)?
                .into_iter()
                .map(|t| g.element(t[0], t[1]))
                .collect::<Result<Vec<_>>>()?;
            from_desc(g, SubgroupDesc::Generators(gens))
        }
        "full" => Ok(Hidden { spelling: "full".into(), ..from_desc(g, SubgroupDesc::XPowerY(0))? }),
        "trivial" => Ok(Hidden { spelling: "trivial".into(), ..from_desc(g, SubgroupDesc::XPower(r))? }),
        "random" => {
            let all = g.enumerate_subgroups()?;
            let k = ChaCha8Rng::seed_from_u64(seed ^ 0x41_dde4).gen_range(0..all.len());
            from_desc(g, all[k].clone())
        }
        _ => Err(bad(format!("unknown hidden-subgroup spec {spec:?}"))),
    }
}

pub fn parse_zm(g: &ZmGroupSpec, spec: &str, seed: u64) -> Result<Hidden<ZmElement>> {
    let spec = spec.trim();
    let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
    let build = |spelling: String, gens: Vec<ZmElement>| Hidden { spelling, elements: closure(g, &gens), generators: gens };
    match head {
        "full" => Ok(build("full".into(), g.generators())),
        "trivial" => Ok(build("trivial".into(), Vec::new())),
        "gens" => {
            let m = g.m();
            let gens = tuples(body, m + 1)?
                .into_iter()
                .map(|t| g.element(t[..m].to_vec(), t[m]))
                .collect::<Result<Vec<_>>>()?;
            Ok(build(spec.to_string(), gens))
        }
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x41_dde5);
            let k = rng.gen_range(1..=2);
            let gens: Vec<ZmElement> = (0..k).map(|_| g.element_at(rng.gen_range(0..g.order()))).collect();
            let parts: Vec<String> = gens
                .iter()
                .map(|e| {
                    let coords: Vec<String> = e.a.iter().chain([&e.b]).map(u64::to_string).collect();
                    format!("({})", coords.join(","))
                })
                .collect();
            Ok(build(format!("gens:[{}]", parts.join(",")), gens))
        }
        "xpower" | "xpowery" | "cyclicxy" => Err(bad(format!("{head} applies to P_{{p,r}} only; use gens:[...] here"))),
        _ => Err(bad(format!("unknown hidden-subgroup spec {spec:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        let g = GroupSpec::p_group(3, 2).unwrap();
        assert_eq!(parse_p(&g, "xpower:1", 0).unwrap().elements.len(), 3);
        assert_eq!(parse_p(&g, "xpowery:1", 0).unwrap().elements.len(), 9);
        assert_eq!(parse_p(&g, "cyclicxy:1,1", 0).unwrap().elements.len(), 3);
        assert_eq!(parse_p(&g, "gens:[(3,0), (0,1)]", 0).unwrap().elements.len(), 9);
        assert_eq!(parse_p(&g, "full", 0).unwrap().elements.len(), 27);
        assert_eq!(parse_p(&g, "trivial", 0).unwrap().elements.len(), 1);
        assert!(parse_p(&g, "random", 5).is_ok());
        for bad in ["xpower:3", "cyclicxy:0,1", "gens:[(9,0)]", "gens:(1,0)", "nope", "xpower:a"] {
            assert!(parse_p(&g, bad, 0).is_err(), "{bad}");
        }

        let z = ZmGroupSpec::new(3, 2, 2).unwrap();
        assert_eq!(parse_zm(&z, "gens:[(3,0,0)]", 0).unwrap().elements.len(), 3);
        assert_eq!(parse_zm(&z, "trivial", 0).unwrap().elements.len(), 1);
        assert_eq!(parse_zm(&z, "full", 0).unwrap().elements.len(), 243);
        assert!(parse_zm(&z, "gens:[(3,0)]", 0).is_err());
        assert!(parse_zm(&z, "xpower:1", 0).is_err());
        let a = parse_zm(&z, "random", 9).unwrap();
        let b = parse_zm(&z, &a.spelling, 0).unwrap();
        assert_eq!(a.elements, b.elements);
    }
}
