//! Finite-depth presentations `A = lim P/I_i` of admissible rings by a
//! descending chain `I_1 ⊇ I_2 ⊇ …` in a polynomial model ring `P`, and the
//! topology tests run against such chains.
//!
//! Power-series ambient rings (`k[[x,y]]`, `k[x,y][[t]]`) are modelled by
//! their polynomial rings at every level. All tests below only use levelwise
//! ideal arithmetic, which agrees with the completed ring.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::exactpoly::{Poly, VarSpec};
use crate::groebner::{Engine, Ideal};

pub const DEFAULT_DEPTH: usize = 6;
pub const DEFAULT_NMAX: u32 = 4;

/// A validated descending chain of ideals in a polynomial ring with equal
/// radicals at every level.
#[derive(Clone, Debug)]
pub struct Tower {
    ring: Arc<VarSpec>,
    chain: Vec<Ideal>,
}

/// Why a chain is not a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainFailure {
    /// `gen ∈ I_level+1` fails, so the chain does not descend at `level`.
    NotDescending { level: usize, generator: Poly },
    /// `gen ∈ I_level` is not nilpotent modulo `I_level+1`.
    NotNilpotent { level: usize, generator: Poly },
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub depth: usize,
    pub failures: Vec<ChainFailure>,
}

/// Checks that the chain descends and that every generator of `I_i` is
/// nilpotent modulo `I_{i+1}`. Levels are 1-based in the report.
pub fn validate_chain(engine: &Engine, chain: &[Ideal]) -> Result<ValidationReport> {
    let per_level: Vec<Result<Vec<ChainFailure>>> = (0..chain.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let (upper, lower) = (&chain[i], &chain[i + 1]);
            let mut out = Vec::new();
            let gb = engine.groebner(upper)?;
            for g in lower.gens() {
                if !gb.contains_poly(g)? {
                    out.push(ChainFailure::NotDescending {
                        level: i + 1,
                        generator: g.clone(),
                    });
                }
            }
            for g in upper.gens() {
                if !engine.radical_member(g, lower)? {
                    out.push(ChainFailure::NotNilpotent {
                        level: i + 1,
                        generator: g.clone(),
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut failures = Vec::new();
    for r in per_level {
        failures.extend(r?);
    }
    Ok(ValidationReport {
        pass: failures.is_empty(),
        depth: chain.len(),
        failures,
    })
}

impl Tower {
    /// Builds a tower, rejecting chains that fail [`validate_chain`].
    pub fn new(engine: &Engine, ring: &Arc<VarSpec>, chain: Vec<Ideal>) -> Result<Tower> {
        if chain.is_empty() {
            return Err(Error::precondition("a tower needs at least one level"));
        }
        for (i, c) in chain.iter().enumerate() {
            if c.ring() != ring {
                return Err(Error::RingMismatch(format!("level {} is not over {ring}", i + 1)));
            }
        }
        let report = validate_chain(engine, &chain)?;
        if let Some(f) = report.failures.first() {
            return Err(Error::precondition(match f {
                ChainFailure::NotDescending { level, generator } => {
                    format!("chain does not descend at level {level}: {generator}")
                }
                ChainFailure::NotNilpotent { level, generator } => {
                    format!(
                        "{generator} from level {level} is not nilpotent modulo level {}",
                        level + 1
                    )
                }
            }));
        }
        Ok(Tower {
            ring: ring.clone(),
            chain,
        })
    }

    pub fn ring(&self) -> &Arc<VarSpec> {
        &self.ring
    }

    pub fn chain(&self) -> &[Ideal] {
        &self.chain
    }

    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    /// Level ideal, 1-based.
    pub fn level(&self, i: usize) -> &Ideal {
        &self.chain[i - 1]
    }

    pub fn validate(&self, engine: &Engine) -> Result<ValidationReport> {
        validate_chain(engine, &self.chain)
    }

    /// The levels `I_1, …, I_depth` truncated to the first `depth` entries.
    pub fn truncated(&self, depth: usize) -> Tower {
        Tower {
            ring: self.ring.clone(),
            chain: self.chain[..depth.clamp(1, self.chain.len())].to_vec(),
        }
    }
}

/// Tower with a radical-equality check against the first level, reporting
/// the offending generator.
pub fn tower_from_chain(engine: &Engine, ring: &Arc<VarSpec>, chain: Vec<Ideal>) -> Result<Tower> {
    if let Some(first) = chain.first() {
        for (i, level) in chain.iter().enumerate().skip(1) {
            for g in first.gens() {
                if !engine.radical_member(g, level)? {
                    return Err(Error::precondition(format!(
                        "radicals differ: {g} is not in the radical of level {}",
                        i + 1
                    )));
                }
            }
            for g in level.gens() {
                if !engine.radical_member(g, first)? {
                    return Err(Error::precondition(format!(
                        "radicals differ: {g} from level {} is not in the radical of level 1",
                        i + 1
                    )));
                }
            }
        }
    }
    Tower::new(engine, ring, chain)
}

/// Levelwise `I_i + K`.
pub fn quotient_tower(engine: &Engine, tower: &Tower, k: &Ideal) -> Result<Tower> {
    if k.ring() != tower.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", k.ring(), tower.ring())));
    }
    let chain = tower.chain.iter().map(|i| i.sum(k)).collect::<Result<Vec<_>>>()?;
    Tower::new(engine, tower.ring(), chain)
}

/// Levelwise `(I_i, u·f − 1)` over `P[u]` with a fresh `u`.
pub fn complete_localize(engine: &Engine, tower: &Tower, f: &Poly) -> Result<Tower> {
    if f.is_zero() {
        return Err(Error::precondition("cannot localize at zero"));
    }
    if f.spec() != tower.ring() {
        return Err(Error::RingMismatch(format!("{f} is not in {}", tower.ring())));
    }
    let (ext, u) = tower.ring().extend_fresh("u");
    let ext = ext.shared();
    let rab = &(&Poly::var(&ext, &u)? * &f.embed(&ext)?) - &Poly::one(&ext);
    let chain = tower
        .chain
        .iter()
        .map(|i| i.embed(&ext)?.with_generator(rab.clone()))
        .collect::<Result<Vec<_>>>()?;
    Tower::new(engine, &ext, chain)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefinitionReport {
    pub is_definition: bool,
    /// Smallest level `i` with `I_i ⊆ J`.
    pub open_witness: Option<usize>,
    /// A generator of `J` and a level whose radical misses it.
    pub nilpotency_failure: Option<(usize, Poly)>,
}

/// `J` is an ideal of definition iff it is open (contains some level) and
/// every generator is nilpotent modulo every level.
pub fn is_ideal_of_definition(engine: &Engine, j: &Ideal, tower: &Tower) -> Result<DefinitionReport> {
    if j.ring() != tower.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", j.ring(), tower.ring())));
    }
    let gb = engine.groebner(j)?;
    let mut open_witness = None;
    for (i, level) in tower.chain.iter().enumerate() {
        if crate::groebner::contains_all(&gb, level)? {
            open_witness = Some(i + 1);
            break;
        }
    }
    let mut nilpotency_failure = None;
    'outer: for (i, level) in tower.chain.iter().enumerate() {
        for g in j.gens() {
            if !engine.radical_member(g, level)? {
                nilpotency_failure = Some((i + 1, g.clone()));
                break 'outer;
            }
        }
    }
    Ok(DefinitionReport {
        is_definition: open_witness.is_some() && nilpotency_failure.is_none(),
        open_witness,
        nilpotency_failure,
    })
}

/// Two-sided cofinality of `{candidate^n}` and the chain, up to the bounds.
#[derive(Clone, Debug, Serialize)]
pub struct AdicReport {
    pub candidate: Ideal,
    pub depth: usize,
    pub n_max: u32,
    /// `(n, i)`: `I_i ⊆ candidate^n`, smallest such `i`.
    pub forward_witness: Vec<(u32, usize)>,
    /// First `n ≤ n_max` with no level inside `candidate^n`.
    pub forward_failure: Option<u32>,
    /// `(i, k)`: `candidate^k ⊆ I_i`, smallest such `k`.
    pub backward_witness: Vec<(usize, u32)>,
    /// First level containing no power `candidate^k`, `k ≤ power_bound`.
    pub backward_failure: Option<usize>,
    pub power_bound: u32,
    pub pass: bool,
}

/// Searches witnesses that the chain topology is the `candidate`-adic one.
/// A failure only means no witness exists within `(depth, n_max)`.
pub fn adic_witness_test(engine: &Engine, tower: &Tower, candidate: &Ideal, n_max: u32) -> Result<AdicReport> {
    let def = is_ideal_of_definition(engine, candidate, tower)?;
    if !def.is_definition {
        return Err(Error::precondition(format!(
            "{candidate} is not an ideal of definition for the tower"
        )));
    }
    let depth = tower.depth();
    let power_bound = n_max.max(depth as u32) + depth as u32;
    let mut powers: Vec<Ideal> = Vec::new();
    let mut power = |k: u32| -> Result<Ideal> {
        while powers.len() < k as usize {
            let next = match powers.last() {
                Some(p) => engine.reduce(&p.product(candidate)?)?,
                None => engine.reduce(candidate)?,
            };
            powers.push(next);
        }
        Ok(powers[k as usize - 1].clone())
    };

    let mut forward_witness = Vec::new();
    let mut forward_failure = None;
    for n in 1..=n_max {
        let gb = engine.groebner(&power(n)?)?;
        let mut hit = None;
        for (i, level) in tower.chain.iter().enumerate() {
            if crate::groebner::contains_all(&gb, level)? {
                hit = Some(i + 1);
                break;
            }
        }
        match hit {
            Some(i) => forward_witness.push((n, i)),
            None => {
                forward_failure = Some(n);
                break;
            }
        }
    }

    let mut backward_witness = Vec::new();
    let mut backward_failure = None;
    for (i, level) in tower.chain.iter().enumerate() {
        let gb = engine.groebner(level)?;
        let mut hit = None;
        for k in 1..=power_bound {
            if crate::groebner::contains_all(&gb, &power(k)?)? {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => backward_witness.push((i + 1, k)),
            None => {
                backward_failure = Some(i + 1);
                break;
            }
        }
    }

    Ok(AdicReport {
        candidate: candidate.clone(),
        depth,
        n_max,
        pass: forward_failure.is_none() && backward_failure.is_none(),
        forward_witness,
        forward_failure,
        backward_witness,
        backward_failure,
        power_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum DichotomyResult {
    /// `(n, i)` with `I_i ⊆ m^n` for every `n ≤ n_max`.
    Cofinal {
        witnesses: Vec<(u32, usize)>,
    },
    /// No level lies in `m^failed_at`, and the images `I_i + m^failed_at`
    /// are constant from `stable_from` on. `generators` are the elements of
    /// the stable image outside `m^failed_at`, each re-verified to lie in
    /// every level.
    StabilizedIntersection {
        failed_at: u32,
        stable_from: usize,
        generators: Vec<Poly>,
    },
    Inconclusive {
        depth: usize,
        failed_at: u32,
    },
}

/// Either the chain is cofinal with the `m`-adic topology, or its
/// intersection is nonzero. The second case is detected through the
/// truncations `I_i + m^k`, which stabilize in `i` and determine the image of
/// `∩ I_i` modulo `m^k`.
pub fn chevalley_dichotomy(engine: &Engine, tower: &Tower, m: &Ideal, n_max: u32) -> Result<DichotomyResult> {
    check_rational_point(engine, m)?;
    let mut witnesses = Vec::new();
    let mut failed_at = None;
    let mut m_pow = Ideal::unit(m.ring())?;
    let mut m_powers = Vec::new();
    for n in 1..=n_max {
        m_pow = engine.reduce(&m_pow.product(m)?)?;
        m_powers.push(m_pow.clone());
        let gb = engine.groebner(&m_pow)?;
        let mut hit = None;
        for (i, level) in tower.chain().iter().enumerate() {
            if crate::groebner::contains_all(&gb, level)? {
                hit = Some(i + 1);
                break;
            }
        }
        match hit {
            Some(i) => witnesses.push((n, i)),
            None => {
                failed_at = Some(n);
                break;
            }
        }
    }
    let Some(k) = failed_at else {
        return Ok(DichotomyResult::Cofinal { witnesses });
    };
    let mk = &m_powers[k as usize - 1];
    let images: Vec<Vec<Poly>> = tower
        .chain()
        .par_iter()
        .map(|level| Ok(engine.groebner(&level.sum(mk)?)?.basis().to_vec()))
        .collect::<Result<_>>()?;
    let depth = tower.depth();
    let mut stable_from = depth;
    while stable_from > 1 && images[stable_from - 2] == images[depth - 1] {
        stable_from -= 1;
    }
    if stable_from == depth {
        return Ok(DichotomyResult::Inconclusive { depth, failed_at: k });
    }
    let mk_gb = engine.groebner(mk)?;
    let mut generators = Vec::new();
    for g in &images[depth - 1] {
        if mk_gb.contains_poly(g)? {
            continue;
        }
        let mut everywhere = true;
        for level in tower.chain() {
            if !engine.member(g, level)? {
                everywhere = false;
                break;
            }
        }
        if everywhere {
            generators.push(g.clone());
        }
    }
    if generators.is_empty() {
        return Ok(DichotomyResult::Inconclusive { depth, failed_at: k });
    }
    Ok(DichotomyResult::StabilizedIntersection {
        failed_at: k,
        stable_from,
        generators,
    })
}

/// `m` must be `(x_1 − c_1, …, x_r − c_r)` for all variables of the ring.
fn check_rational_point(engine: &Engine, m: &Ideal) -> Result<()> {
    let ring = m.ring();
    let gb = engine.groebner(m)?;
    let ok = gb.basis().len() == ring.len()
        && gb
            .basis()
            .iter()
            .all(|g| g.total_degree() == Some(1) && g.terms().filter(|(mono, _)| mono.degree() == 1).count() == 1);
    if !ok {
        return Err(Error::precondition(format!("{m} is not the ideal of a rational point")));
    }
    Ok(())
}

/// On-disk tower description. Generators use the polynomial text grammar;
/// invertible variables are modelled by a fresh inverse `v_inv` with
/// `v·v_inv − 1` added to every level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub vars: Vec<String>,
    #[serde(default)]
    pub invertible: Vec<String>,
    #[serde(default)]
    pub series_var: Option<String>,
    pub chain: Vec<Vec<String>>,
}

/// A parsed but not yet validated tower description.
#[derive(Clone, Debug)]
pub struct ParsedTower {
    /// Ring the generators were written in (may have invertible variables).
    pub source: Arc<VarSpec>,
    /// Polynomial model ring.
    pub ring: Arc<VarSpec>,
    pub chain: Vec<Ideal>,
}

impl TowerFile {
    pub fn from_json(text: &str) -> Result<TowerFile> {
        serde_json::from_str(text).map_err(|e| {
            let pos = text
                .lines()
                .take(e.line().saturating_sub(1))
                .map(|l| l.len() + 1)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            Error::Parse(ParseError::new(pos, format!("tower description: {e}")))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tower descriptions serialize")
    }

    /// Parses every generator and builds the polynomial model ring.
    pub fn parse(&self) -> Result<ParsedTower> {
        let source = VarSpec::new(&self.vars, &self.invertible, self.series_var.as_deref())?.shared();
        let mut ring = source.without_inverses();
        let mut inverses = Vec::new();
        for v in &self.invertible {
            let (next, inv) = ring.extend_fresh(&format!("{v}_inv"));
            ring = next;
            inverses.push((v.clone(), inv));
        }
        let ring = ring.shared();
        let mut units = Vec::new();
        for (v, inv) in &inverses {
            units.push(&(&Poly::var(&ring, v)? * &Poly::var(&ring, inv)?) - &Poly::one(&ring));
        }
        let mut chain = Vec::with_capacity(self.chain.len());
        for level in &self.chain {
            let mut gens = Vec::with_capacity(level.len() + units.len());
            for text in level {
                let (q, _) = Poly::parse(text, &source)?.laurent_clear();
                gens.push(q.embed(&ring)?);
            }
            gens.extend(units.iter().cloned());
            chain.push(Ideal::new(&ring, gens)?);
        }
        Ok(ParsedTower { source, ring, chain })
    }

    pub fn from_tower(tower: &Tower) -> TowerFile {
        TowerFile {
            vars: tower.ring().names().to_vec(),
            invertible: vec![],
            series_var: tower.ring().series_name().map(str::to_string),
            chain: tower.chain().iter().map(Ideal::gen_strings).collect(),
        }
    }
}

/// Parses and validates a tower description.
pub fn parse_tower(engine: &Engine, text: &str) -> Result<Tower> {
    let parsed = TowerFile::from_json(text)?.parse()?;
    Tower::new(engine, &parsed.ring, parsed.chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<VarSpec> {
        VarSpec::polynomial(names).unwrap().shared()
    }

    fn chain(r: &Arc<VarSpec>, levels: &[&[&str]]) -> Vec<Ideal> {
        levels.iter().map(|g| Ideal::parse(r, g).unwrap()).collect()
    }

    #[test]
    fn validation_examples() {
        let e = Engine::default();
        let r = ring(&["x", "y"]);
        let ok = chain(
            &r,
            &[&["x", "y"], &["x^2", "x*y", "y^2"], &["x^3", "x^2*y", "x*y^2", "y^3"]],
        );
        assert!(validate_chain(&e, &ok).unwrap().pass);
        let xy = chain(&r, &[&["x*y"], &["x*y^2"], &["x*y^3"]]);
        assert!(validate_chain(&e, &xy).unwrap().pass);
        let bad = chain(&r, &[&["x"], &["x^2*y"]]);
        let rep = validate_chain(&e, &bad).unwrap();
        assert!(!rep.pass);
        assert_eq!(
            rep.failures,
            vec![ChainFailure::NotNilpotent {
                level: 1,
                generator: Poly::parse("x", &r).unwrap()
            }]
        );
        assert!(Tower::new(&e, &r, bad).is_err());
    }

    #[test]
    fn radical_equality() {
        let e = Engine::default();
        let r = ring(&["x", "y"]);
        assert!(tower_from_chain(&e, &r, chain(&r, &[&["x*y"], &["x*y^2"], &["x*y^3"]])).is_ok());
        assert!(tower_from_chain(&e, &r, chain(&r, &[&["x", "y"], &["x"]])).is_err());
        assert!(tower_from_chain(&e, &r, chain(&r, &[&["x"], &["x^2"], &["x^3"]])).is_ok());
    }

    #[test]
    fn quotient_and_localization() {
        let e = Engine::default();
        let r = ring(&["x", "y", "t"]);
        let t = Tower::new(&e, &r, chain(&r, &[&["t"], &["t^2"]])).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let q = quotient_tower(&e, &t, &y).unwrap();
        assert!(e.equal(q.level(2), &Ideal::parse(&r, &["y", "t^2"]).unwrap()).unwrap());
        let unit = quotient_tower(&e, &t, &Ideal::unit(&r).unwrap()).unwrap();
        assert!(unit.chain().iter().all(|l| e.is_unit(l).unwrap()));

        let r2 = ring(&["x", "t"]);
        let t2 = Tower::new(&e, &r2, chain(&r2, &[&["x", "t"], &["x^2", "t"]])).unwrap();
        let loc = complete_localize(&e, &t2, &Poly::parse("x", &r2).unwrap()).unwrap();
        assert_eq!(loc.ring().names(), &["x", "t", "u"]);
        assert!(e.is_unit(loc.level(1)).unwrap());
        assert!(complete_localize(&e, &t2, &Poly::zero(&r2)).is_err());
    }

    #[test]
    fn ideals_of_definition() {
        let e = Engine::default();
        let r = ring(&["x", "y"]);
        let t = Tower::new(&e, &r, chain(&r, &[&["x*y"], &["x*y^2"], &["x*y^3"]])).unwrap();
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(is_ideal_of_definition(&e, &xy, &t).unwrap().is_definition);
        let rep = is_ideal_of_definition(&e, &Ideal::parse(&r, &["x"]).unwrap(), &t).unwrap();
        assert!(!rep.is_definition);
        assert_eq!(rep.open_witness, Some(1));
        assert_eq!(rep.nilpotency_failure.map(|f| f.0), Some(1));
    }

    #[test]
    fn adic_examples() {
        let e = Engine::default();
        let r = ring(&["x", "y"]);
        let t = Tower::new(&e, &r, chain(&r, &[&["x*y"], &["x*y^2"], &["x*y^3"], &["x*y^4"]])).unwrap();
        let rep = adic_witness_test(&e, &t, &Ideal::parse(&r, &["x*y"]).unwrap(), 2).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.forward_witness, vec![(1, 1)]);
        assert_eq!(rep.forward_failure, Some(2));
        assert_eq!(rep.backward_witness, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);

        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let powers: Vec<Ideal> = (1..=4).map(|n| e.power(&m, n).unwrap()).collect();
        let t = Tower::new(&e, &r, powers).unwrap();
        let rep = adic_witness_test(&e, &t, &m, 4).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.forward_witness, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn chevalley_examples() {
        let e = Engine::default();
        let r = ring(&["x", "y"]);
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let even: Vec<Ideal> = (1..=4).map(|n| e.power(&m, 2 * n).unwrap()).collect();
        let t = Tower::new(&e, &r, even).unwrap();
        match chevalley_dichotomy(&e, &t, &m, 4).unwrap() {
            DichotomyResult::Cofinal { witnesses } => assert_eq!(witnesses, vec![(1, 1), (2, 1), (3, 2), (4, 2)]),
            other => panic!("{other:?}"),
        }
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let lines: Vec<Ideal> = (1..=5).map(|n| x.sum(&e.power(&m, n).unwrap()).unwrap()).collect();
        let t = Tower::new(&e, &r, lines).unwrap();
        match chevalley_dichotomy(&e, &t, &m, 4).unwrap() {
            DichotomyResult::StabilizedIntersection {
                failed_at,
                stable_from,
                generators,
            } => {
                assert_eq!(failed_at, 2);
                assert_eq!(stable_from, 2);
                assert_eq!(generators, vec![Poly::parse("x", &r).unwrap()]);
            }
            other => panic!("{other:?}"),
        }
        let bad = Ideal::parse(&r, &["x^2", "y"]).unwrap();
        assert!(chevalley_dichotomy(&e, &t, &bad, 2).is_err());
    }

    #[test]
    fn tower_file_round_trip() {
        let e = Engine::default();
        let text = r#"{"vars": ["x", "y"], "chain": [["x*y"], ["x*y^2"]]}"#;
        let t = parse_tower(&e, text).unwrap();
        assert_eq!(t.depth(), 2);
        let back = TowerFile::from_tower(&t).to_json();
        assert_eq!(
            TowerFile::from_json(&back).unwrap().chain,
            vec![vec!["x*y"], vec!["x*y^2"]]
        );

        let text = r#"{"vars": ["x", "t"], "invertible": ["x"], "series_var": "t", "chain": [["x^-1*t"], ["t^2"]]}"#;
        let t = parse_tower(&e, text).unwrap();
        assert_eq!(t.ring().names(), &["x", "t", "x_inv"]);
        assert!(e
            .equal(t.level(1), &Ideal::parse(t.ring(), &["t", "x*x_inv - 1"]).unwrap())
            .unwrap());

        assert!(matches!(TowerFile::from_json("{\"vars\": [}"), Err(Error::Parse(_))));
        assert!(parse_tower(&e, r#"{"vars": ["x"], "chain": [["y"]]}"#).is_err());
    }
}
