use std::path::Path;
use std::sync::Arc;

use formalis::closures::{
    counterexample_ring, counterexample_series, de_profile, invert_to_monomial, line_closure,
    nonzero_intersection_witness, ordinary_closure, pseudo_closure, saturation_profile, search_polynomial_multiple,
    CoefficientRule, OpenSubschemeSpec, SearchOutcome,
};
use formalis::foliations::{
    algebraic_solution_search, check_integrability, euler_residue, is_formal_separatrix, jouanolou_form,
    line_validation, make_pfaff, plane_ring, separatrix_family, smooth_separatrix, OneForm, PfaffForm,
};
use formalis::groebner::MonomialOrder;
use formalis::towers::{
    adic_witness_test, chevalley_dichotomy, validate_chain, DichotomyResult, ParsedTower, Tower, TowerFile,
};
use formalis::{Engine, Error, Ideal, Poly, Rat, TruncSeries, VarSpec};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::Failure;
use crate::{Command, FormArgs, RingArgs, SeriesArgs};

pub(crate) const ADIC_CAVEAT: &str =
    "a failed witness search is bounded by the tower depth and n_max; it is evidence of non-adicness, not a proof";
pub(crate) const DIVERGENCE_CAVEAT: &str =
    "divergence of the coefficient sequence is checked only through strictly increasing |a_i| and ratios below N";
pub(crate) const FINITE_TOWER_CAVEAT: &str =
    "intersection generators are verified on every level of the given finite tower only";
pub(crate) const HOMOGENEITY_CAVEAT: &str =
    "for a homogeneous form the base point w*d rescales the degree-k coefficients by w^(1-k), so pole order k-1 is forced by homogeneity";

pub(crate) struct Done {
    pub inputs: Value,
    pub result: Value,
    pub caveats: Vec<String>,
}

type Out = Result<(Value, Vec<String>), Failure>;

pub(crate) fn dispatch(engine: &Engine, cmd: &Command) -> Result<Done, (Value, Failure)> {
    let inputs = echo(cmd);
    let out = match cmd {
        Command::Parse { poly, tower, ring } => parse(engine, poly.as_deref(), tower.as_deref(), ring),
        Command::Gb { gens, order, ring } => gb(engine, gens, order, ring),
        Command::Closure { tower, f, j, level } => closure(engine, tower, f, j, *level),
        Command::PseudoClosure { tower, pieces, f, j } => pseudo(engine, tower, pieces.as_deref(), f.as_deref(), j),
        Command::AdicTest { tower, candidate, nmax } => adic(engine, tower, candidate, *nmax),
        Command::Chevalley { tower, max_ideal, nmax } => chevalley(engine, tower, max_ideal, *nmax),
        Command::Invert { f, order, ring } => invert(f, *order, ring),
        Command::LineClosure { f, order, ring } => lines(engine, f, *order, ring),
        Command::Counterexample { rule, order } => counterexample(rule, *order),
        Command::DeProfile { g, order } => profile(g, *order),
        Command::SearchMultiple { series, seed, order } => search(series, seed, *order),
        Command::SaturationProfile { series, nmax, m } => saturation(engine, series, *nmax, *m),
        Command::PfaffCheck { form } => pfaff_check(form),
        Command::Darboux { form, degree } => darboux(engine, form, *degree),
        Command::Separatrix { form, point, order } => separatrix(form, point, *order),
        Command::Family { form, direction, order } => family(form, direction, *order),
        Command::Reproduce { name } => crate::reproduce::run(engine, name),
    };
    match out {
        Ok((result, caveats)) => Ok(Done {
            inputs,
            result,
            caveats,
        }),
        Err(f) => Err((inputs, f)),
    }
}

/// Raw arguments of the command, without the subcommand name.
fn echo(cmd: &Command) -> Value {
    let text = format!("{cmd:?}");
    let mut v = serde_json::Map::new();
    macro_rules! put {
        ($($k:literal => $e:expr),* $(,)?) => {{ $( v.insert($k.to_string(), json!($e)); )* }};
    }
    let ring = |r: &RingArgs| json!({"vars": r.vars, "invertible": r.invertible, "series": r.series});
    let form = |f: &FormArgs| json!({"jouanolou": f.jouanolou, "m": f.m, "w": f.w});
    let series = |s: &SeriesArgs| json!({"f": s.f, "rule": s.rule});
    match cmd {
        Command::Parse { poly, tower, ring: r } => put!("poly" => poly, "tower" => tower, "ring" => ring(r)),
        Command::Gb { gens, order, ring: r } => put!("gens" => gens, "order" => order, "ring" => ring(r)),
        Command::Closure { tower, f, j, level } => put!("tower" => tower, "f" => f, "j" => j, "level" => level),
        Command::PseudoClosure { tower, pieces, f, j } => {
            put!("tower" => tower, "pieces" => pieces, "f" => f, "j" => j)
        }
        Command::AdicTest { tower, candidate, nmax } => {
            put!("tower" => tower, "candidate" => candidate, "nmax" => nmax)
        }
        Command::Chevalley { tower, max_ideal, nmax } => {
            put!("tower" => tower, "max_ideal" => max_ideal, "nmax" => nmax)
        }
        Command::Invert { f, order, ring: r } | Command::LineClosure { f, order, ring: r } => {
            put!("f" => f, "N" => order, "ring" => ring(r))
        }
        Command::Counterexample { rule, order } => put!("rule" => rule, "N" => order),
        Command::DeProfile { g, order } => put!("g" => g, "N" => order),
        Command::SearchMultiple { series: s, seed, order } => put!("series" => series(s), "seed" => seed, "N" => order),
        Command::SaturationProfile { series: s, nmax, m } => put!("series" => series(s), "nmax" => nmax, "m" => m),
        Command::PfaffCheck { form: f } => put!("form" => form(f)),
        Command::Darboux { form: f, degree } => put!("form" => form(f), "degree" => degree),
        Command::Separatrix { form: f, point, order } => put!("form" => form(f), "point" => point, "N" => order),
        Command::Family {
            form: f,
            direction,
            order,
        } => put!("form" => form(f), "direction" => direction, "N" => order),
        Command::Reproduce { name } => put!("name" => name),
    }
    log::debug!("inputs: {text}");
    Value::Object(v)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

fn ring_from(args: &RingArgs, default: Arc<VarSpec>) -> Result<Arc<VarSpec>, Failure> {
    if args.vars.is_none() && args.invertible.is_none() && args.series.is_none() {
        return Ok(default);
    }
    let vars = match &args.vars {
        Some(v) => split_list(v),
        None => default.names().to_vec(),
    };
    let inv = args.invertible.as_deref().map(split_list).unwrap_or_default();
    Ok(VarSpec::new(&vars, &inv, args.series.as_deref())?.shared())
}

fn polynomial_default() -> Arc<VarSpec> {
    plane_ring()
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat, Failure> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Failure::Input(format!("not a rational number: {s:?}")))
}

pub(crate) fn rat_triple(s: &str) -> Result<[Rat; 3], Failure> {
    let parts = split_list(s);
    if parts.len() != 3 {
        return Err(Failure::Input(format!(
            "expected three comma-separated rationals, got {s:?}"
        )));
    }
    Ok([parse_rat(&parts[0])?, parse_rat(&parts[1])?, parse_rat(&parts[2])?])
}

pub(crate) fn parse_rule(s: &str) -> Result<CoefficientRule, Failure> {
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    match head.trim() {
        "factorial" => Ok(CoefficientRule::Factorial),
        "square" => arg
            .trim()
            .parse::<i64>()
            .map(CoefficientRule::PowerOfSquare)
            .map_err(|_| Failure::Input(format!("square:B needs an integer base, got {arg:?}"))),
        "const" => Ok(CoefficientRule::Constant(parse_rat(arg)?)),
        "list" => Ok(CoefficientRule::List(
            split_list(arg).iter().map(|a| parse_rat(a)).collect::<Result<_, _>>()?,
        )),
        _ => Err(Failure::Input(format!("unknown coefficient rule {s:?}"))),
    }
}

fn series_from(args: &SeriesArgs, order: u32) -> Result<TruncSeries, Failure> {
    match (&args.f, &args.rule) {
        (Some(f), None) => Ok(TruncSeries::truncate(&Poly::parse(f, &counterexample_ring())?, order)?),
        (None, Some(r)) => Ok(counterexample_series(&parse_rule(r)?, order)?),
        (None, None) => Ok(counterexample_series(&CoefficientRule::Factorial, order)?),
        (Some(_), Some(_)) => Err(Failure::Input("give either --f or --rule".into())),
    }
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

struct LoadedTower {
    parsed: ParsedTower,
    tower: Tower,
}

impl LoadedTower {
    fn poly(&self, text: &str) -> Result<Poly, Failure> {
        let (q, _) = Poly::parse(text, &self.parsed.source)?.laurent_clear();
        Ok(q.embed(&self.parsed.ring)?)
    }

    fn ideal(&self, gens: &[String]) -> Result<Ideal, Failure> {
        let ps = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.parsed.ring, ps)?)
    }
}

fn load_tower(engine: &Engine, path: &Path) -> Result<LoadedTower, Failure> {
    let text = read(path)?;
    let parsed = TowerFile::from_json(&text)?.parse()?;
    let tower = Tower::new(engine, &parsed.ring, parsed.chain.clone())?;
    Ok(LoadedTower { parsed, tower })
}

fn parse(engine: &Engine, poly: Option<&str>, tower: Option<&Path>, ring: &RingArgs) -> Out {
    match (poly, tower) {
        (Some(p), None) => {
            let r = ring_from(ring, polynomial_default())?;
            let p = Poly::parse(p, &r)?;
            Ok((
                json!({
                    "ring": r.names(),
                    "poly": p.to_string(),
                    "terms": p.len(),
                    "total_degree": p.total_degree(),
                    "laurent": p.has_negative_exponents(),
                }),
                vec![],
            ))
        }
        (None, Some(path)) => {
            let parsed = TowerFile::from_json(&read(path)?)?.parse()?;
            let report = validate_chain(engine, &parsed.chain)?;
            let chain: Vec<Vec<String>> = parsed.chain.iter().map(Ideal::gen_strings).collect();
            Ok((
                json!({
                    "ring": parsed.source.names(),
                    "model_ring": parsed.ring.names(),
                    "depth": chain.len(),
                    "chain": chain,
                    "validation": report,
                }),
                vec![],
            ))
        }
        _ => Err(Failure::Input("give exactly one of --poly or --tower".into())),
    }
}

fn gb(engine: &Engine, gens: &[String], order: &str, ring: &RingArgs) -> Out {
    let r = ring_from(ring, polynomial_default())?;
    let ideal = Ideal::parse(&r, gens)?;
    let ord = match order {
        "grevlex" => MonomialOrder::grevlex(&r),
        "lex" => MonomialOrder::lex(&r),
        other => {
            let k = other
                .strip_prefix("elim:")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k <= r.len())
                .ok_or_else(|| Failure::Input(format!("unknown order {other:?}")))?;
            MonomialOrder::elimination(&r, &r.names()[..k])
        }
    };
    let basis = engine.buchberger(&ideal, &ord)?;
    Ok((
        json!({
            "order": ord.to_string(),
            "basis": strings(basis.basis()),
            "is_unit": basis.is_unit(),
        }),
        vec![],
    ))
}

fn closure(engine: &Engine, tower: &Path, f: &str, j: &[String], level: usize) -> Out {
    let t = load_tower(engine, tower)?;
    let y = OpenSubschemeSpec::new(t.poly(f)?, t.ideal(j)?)?;
    let c = ordinary_closure(engine, &t.tower, &y, level)?;
    Ok((
        json!({"level": level, "closure": c.gen_strings(), "is_unit": engine.is_unit(&c)?}),
        vec![],
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceFile {
    f: String,
    #[serde(default)]
    j: Vec<String>,
}

fn pseudo(engine: &Engine, tower: &Path, pieces: Option<&Path>, f: Option<&str>, j: &[String]) -> Out {
    let t = load_tower(engine, tower)?;
    let ys = match pieces {
        Some(p) => {
            let list: Vec<PieceFile> =
                serde_json::from_str(&read(p)?).map_err(|e| Failure::Input(format!("pieces file: {e}")))?;
            list.iter()
                .map(|pf| Ok(OpenSubschemeSpec::new(t.poly(&pf.f)?, t.ideal(&pf.j)?)?))
                .collect::<Result<Vec<_>, Failure>>()?
        }
        None => {
            let y = OpenSubschemeSpec::new(t.poly(f.unwrap_or("1"))?, t.ideal(j)?)?;
            vec![y; t.tower.depth()]
        }
    };
    let chain = pseudo_closure(engine, &t.tower, &ys)?;
    Ok((serde_json::to_value(&chain).unwrap(), vec![]))
}

fn adic(engine: &Engine, tower: &Path, candidate: &[String], nmax: u32) -> Out {
    let t = load_tower(engine, tower)?;
    let rep = adic_witness_test(engine, &t.tower, &t.ideal(candidate)?, nmax)?;
    let caveats = if rep.pass {
        vec![]
    } else {
        vec![ADIC_CAVEAT.to_string()]
    };
    Ok((serde_json::to_value(&rep).unwrap(), caveats))
}

fn chevalley(engine: &Engine, tower: &Path, max_ideal: &[String], nmax: u32) -> Out {
    let t = load_tower(engine, tower)?;
    let m = if max_ideal.is_empty() {
        let r = &t.parsed.ring;
        Ideal::new(r, (0..r.len()).map(|i| Poly::var(r, r.name(i)).unwrap()).collect())?
    } else {
        t.ideal(max_ideal)?
    };
    let res = chevalley_dichotomy(engine, &t.tower, &m, nmax)?;
    let caveats = match res {
        DichotomyResult::Cofinal { .. } => vec![],
        _ => vec![FINITE_TOWER_CAVEAT.to_string()],
    };
    Ok((serde_json::to_value(&res).unwrap(), caveats))
}

pub(crate) fn series_in(f: &str, order: u32, ring: &RingArgs) -> Result<TruncSeries, Failure> {
    let r = ring_from(ring, counterexample_ring())?;
    Ok(TruncSeries::truncate(&Poly::parse(f, &r)?, order)?)
}

fn invert(f: &str, order: u32, ring: &RingArgs) -> Out {
    let s = series_in(f, order, ring)?;
    let inv = invert_to_monomial(&s, order)?;
    Ok((
        json!({
            "n": inv.n,
            "order": inv.order,
            "lead": inv.lead.to_string(),
            "numerators": strings(&inv.numerators),
            "g": inv.folded.as_ref().map(|g| g.poly().to_string()),
            "verified": inv.verify(&s)?,
        }),
        vec![],
    ))
}

fn lines(engine: &Engine, f: &str, order: u32, ring: &RingArgs) -> Out {
    let s = series_in(f, order, ring)?;
    let c = line_closure(engine, &s, order)?;
    let witness = nonzero_intersection_witness(engine, &s, order)?;
    Ok((
        json!({
            "ring": c.ring().names(),
            "closure": c.gen_strings(),
            "is_unit": engine.is_unit(&c)?,
            "witness_k": witness,
        }),
        vec![],
    ))
}

fn counterexample(rule: &str, order: u32) -> Out {
    let rule = parse_rule(rule)?;
    let f = counterexample_series(&rule, order)?;
    let coeffs: Vec<String> = (1..order).map(|i| rule.coefficient(i).unwrap().to_string()).collect();
    Ok((
        json!({"series": f.poly().to_string(), "coefficients": coeffs}),
        vec![DIVERGENCE_CAVEAT.to_string()],
    ))
}

fn profile(g: &str, order: u32) -> Out {
    let g = TruncSeries::truncate(&Poly::parse(g, &counterexample_ring())?, order)?;
    let p = de_profile(&g, order)?;
    Ok((
        json!({
            "profile": p,
            "d_violation": p.d_violation(),
            "e_violation": p.e_violation(),
        }),
        vec![],
    ))
}

fn search(series: &SeriesArgs, seed: &str, order: u32) -> Out {
    let f = series_from(series, order)?;
    let seed = Poly::parse(seed, f.spec())?;
    let out = search_polynomial_multiple(&f, &seed, order)?;
    let verified = match &out {
        SearchOutcome::Obstruction(c) => c.verify(&f)?,
        SearchOutcome::Multiple { g, h } => &f.mul(g)? == h && !h.poly().has_negative_exponents(),
    };
    let mut result = serde_json::to_value(&out).unwrap();
    result["verified"] = json!(verified);
    let caveats = if series.rule.is_some() || series.f.is_none() {
        vec![DIVERGENCE_CAVEAT.to_string()]
    } else {
        vec![]
    };
    Ok((result, caveats))
}

fn saturation(engine: &Engine, series: &SeriesArgs, nmax: u32, m: u32) -> Out {
    let f = series_from(series, nmax)?;
    let chain = saturation_profile(engine, &f, nmax, m)?;
    let mut result = serde_json::to_value(&chain).unwrap();
    result["projection_stable_from"] = json!(chain.projection_stable_from(m as usize));
    result["projections_strictly_decreasing"] = json!(chain.projections_strictly_decreasing(m as usize));
    Ok((result, vec![]))
}

fn one_form(args: &FormArgs) -> Result<OneForm, Failure> {
    if let Some(m) = args.jouanolou {
        return Ok(jouanolou_form(m)?.form().clone());
    }
    if args.w.len() != 3 {
        return Err(Failure::Input(format!(
            "expected three --w components, got {}",
            args.w.len()
        )));
    }
    let r = plane_ring();
    Ok(OneForm::new([
        Poly::parse(&args.w[0], &r)?,
        Poly::parse(&args.w[1], &r)?,
        Poly::parse(&args.w[2], &r)?,
    ])?)
}

fn pfaff(args: &FormArgs) -> Result<PfaffForm, Failure> {
    if let Some(m) = args.jouanolou {
        return Ok(jouanolou_form(m)?);
    }
    let w = one_form(args)?;
    let m = match args.m {
        Some(m) => m,
        None => {
            w.0.iter()
                .find_map(Poly::total_degree)
                .ok_or_else(|| Error::precondition("the zero form is not a Pfaff form"))? as u32
        }
    };
    Ok(make_pfaff(m, w.0)?)
}

fn pfaff_check(args: &FormArgs) -> Out {
    let w = one_form(args)?;
    let degrees: Vec<Option<i64>> = w.0.iter().map(Poly::total_degree).collect();
    let homogeneous = w.0.iter().all(|p| p.is_zero() || p.is_homogeneous())
        && degrees
            .iter()
            .flatten()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            <= 1;
    let residue = euler_residue(&w);
    let integ = check_integrability(&w);
    Ok((
        json!({
            "components": strings(&w.0),
            "degrees": degrees,
            "homogeneous": homogeneous,
            "euler_residue": residue.to_string(),
            "integrable": integ.integrable,
            "integrability_residual": integ.residual.to_string(),
            "pfaff": homogeneous && residue.is_zero() && w.0.iter().any(|p| !p.is_zero()),
        }),
        vec![],
    ))
}

fn darboux(engine: &Engine, args: &FormArgs, degree: u32) -> Out {
    let w = pfaff(args)?;
    let rep = algebraic_solution_search(engine, &w, degree)?;
    let check_order = 2 * w.degree() + degree;
    let mut checks = Vec::new();
    for s in &rep.solutions {
        let ones = vec![Rat::from_integer(1.into()); s.unknowns.len()];
        checks.push(match s.sample(&ones, &plane_ring())? {
            Some(f) => json!({"leading": s.leading, "sample": f.to_string(),
                              "verified": is_formal_separatrix(w.form(), &f, check_order)?}),
            None => json!({"leading": s.leading, "sample": null, "verified": null}),
        });
    }
    let mut result = serde_json::to_value(&rep).unwrap();
    result["checks"] = json!(checks);
    Ok((result, vec![]))
}

fn separatrix(args: &FormArgs, point: &str, order: u32) -> Out {
    let w = one_form(args)?;
    let p = rat_triple(point)?;
    let jet = smooth_separatrix(&w, &p, order)?;
    let res = jet.residual(&w)?;
    let mut result = serde_json::to_value(&jet).unwrap();
    result["residual_zero"] = json!(res.iter().all(Poly::is_zero));
    Ok((result, vec![]))
}

fn family(args: &FormArgs, direction: &str, order: u32) -> Out {
    let w = pfaff(args)?;
    let d = rat_triple(direction)?;
    let lv = line_validation(&w, &d)?;
    if !lv.valid {
        return Err(
            Error::precondition("the form vanishes identically along this line; choose another direction").into(),
        );
    }
    let fam = separatrix_family(&w, &d, order)?;
    let mut result = serde_json::to_value(&fam).unwrap();
    result["line_validation"] = serde_json::to_value(&lv).unwrap();
    result["pole_profile_non_decreasing"] = json!(fam.pole_profile_non_decreasing());
    Ok((result, vec![HOMOGENEITY_CAVEAT.to_string()]))
}
