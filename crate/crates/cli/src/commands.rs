use std::fmt::Write as _;

use k3_obstruction::cyclotomic::{
    apostol_resultant, c_sets, cyclo_shape, cyclotomic, pi_cyclo, totient_fiber,
};
use k3_obstruction::error::Error;
use k3_obstruction::intpoly::{
    circle_profile, classify_symmetry, decompose, factor_over_q, IntPolynomial, Symmetry,
};
use k3_obstruction::modp::{factor_mod_p, factor_mod_p_seeded, reduce_mod_p, ModPolynomial};
use k3_obstruction::obstruction::{
    check_sign, check_square, construct_vanishing_index_seeded, enumerate_index_maps,
    obstruction_map_seeded, EquivalenceClasses, IndexMap, ObstructionReport,
};
use k3_obstruction::padic::{
    factor_over_qp, nonsquare_memberships, pi_set, symbol_set, LocalSymbolSet,
};
use k3_obstruction::salem::{
    is_salem_polynomial, realizable_nonprojective_with, scan_counterexamples, Realizability,
    RealizeOptions, SalemVerdict,
};
use serde_json::{json, Value};

use crate::args::{Command, CycloCmd, Global, SalemCmd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Domain,
    Undecided,
    Internal,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Internal => 1,
            Status::Domain => 2,
            Status::Undecided => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Domain => "domain_error",
            Status::Undecided => "undecided",
            Status::Internal => "internal_error",
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            status: Status::Ok,
            text,
            json,
        }
    }

    pub fn timeout(ms: u64) -> Self {
        let msg = format!("timed out after {ms} ms");
        Outcome {
            status: Status::Undecided,
            json: json!({ "error": "timeout", "message": msg }),
            text: msg,
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let (status, kind) = match &e {
            Error::Domain(_) => (Status::Domain, "domain"),
            Error::Parse { .. } => (Status::Domain, "parse"),
            Error::Unsupported(_) => (Status::Domain, "unsupported"),
            Error::Undecided(_) => (Status::Undecided, "undecided"),
            Error::Internal(_) => (Status::Internal, "internal"),
        };
        let mut j = json!({ "error": kind, "message": e.to_string() });
        if let Error::Parse { pos, .. } = &e {
            j["position"] = json!(pos);
        }
        Outcome {
            status,
            text: e.to_string(),
            json: j,
        }
    }
}

type Res = Result<Outcome, Error>;

pub fn run(cmd: &Command, g: Global) -> Outcome {
    let out = match cmd {
        Command::Factor { poly, modulus, qp } => factor(poly, *modulus, *qp, g),
        Command::Cyclo { cmd } => cyclo(cmd),
        Command::Pi { f, g } => pi(f, g),
        Command::Symbols { poly, p, nonsquare } => symbols(poly, *p, *nonsquare),
        Command::Obstruct {
            poly,
            signature,
            values,
            limit,
            vanishing,
        } => obstruct(
            poly,
            signature.as_deref(),
            values.as_deref(),
            *limit,
            vanishing.as_deref(),
            g,
        ),
        Command::Salem { cmd } => salem(cmd),
        Command::Idx { poly, r, s, limit } => idx(poly, *r, *s, *limit),
    };
    out.unwrap_or_else(Outcome::from)
}

fn poly(s: &str) -> Result<IntPolynomial, Error> {
    s.parse()
}

fn int_list(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Domain(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

fn set_text(p: &[u64]) -> String {
    if p.is_empty() {
        "∅".to_string()
    } else {
        let parts: Vec<String> = p.iter().map(u64::to_string).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn mod_json(g: &ModPolynomial) -> Value {
    json!(g.poly_string())
}

fn factor(text: &str, modulus: Option<u64>, qp: Option<u64>, g: Global) -> Res {
    let f = poly(text)?;
    if let Some(p) = modulus {
        let fbar = reduce_mod_p(&f, p)?;
        let parts = match g.seed {
            Some(seed) => factor_mod_p_seeded(&fbar, seed),
            None => factor_mod_p(&fbar),
        };
        let mut t = format!("{} mod {p} =", fbar.poly_string());
        for (h, e) in &parts {
            write!(t, " ({})^{e}", h.poly_string()).unwrap();
        }
        let j = json!({
            "polynomial": f.to_string(), "p": p,
            "factors": parts.iter().map(|(h, e)| json!({"factor": h.poly_string(), "multiplicity": e})).collect::<Vec<_>>(),
        });
        return Ok(Outcome::ok(t, j));
    }
    if let Some(p) = qp {
        let parts = factor_over_qp(&f, p)?;
        let mut t = format!("{f} over Q_{p}: {} factor(s)\n", parts.len());
        let mut arr = Vec::new();
        for lf in &parts {
            writeln!(
                t,
                "  degree {} (e = {}, f = {}), reduction ({}), {}",
                lf.degree(),
                lf.ramification_index,
                lf.residue_degree,
                lf.reduction.poly_string(),
                if lf.star_symmetric {
                    "*-symmetric"
                } else {
                    "not *-symmetric"
                }
            )
            .unwrap();
            arr.push(json!({
                "degree": lf.degree(), "ramification_index": lf.ramification_index,
                "residue_degree": lf.residue_degree, "reduction": lf.reduction.poly_string(),
                "residue_polynomial": lf.residue_polynomial().poly_string(),
                "star_symmetric": lf.star_symmetric,
                "approximation": lf.approx.to_string(), "precision": lf.precision,
            }));
        }
        return Ok(Outcome::ok(
            t.trim_end().to_string(),
            json!({"polynomial": f.to_string(), "p": p, "factors": arr}),
        ));
    }
    let parts = factor_over_q(&f)?;
    let mut t = format!("{f} =");
    for (h, e) in &parts {
        write!(t, " ({h})^{e}").unwrap();
    }
    let mut j = json!({
        "polynomial": f.to_string(),
        "factors": parts.iter().map(|(h, e)| json!({"factor": h.to_string(), "multiplicity": e})).collect::<Vec<_>>(),
    });
    if f.deg() > 0
        && f.is_monic()
        && classify_symmetry(&f).is_ok_and(|s| s != Symmetry::NonSymmetric)
    {
        let dec = decompose(&f)?;
        let prof = circle_profile(&dec)?;
        write!(
            t,
            "\n*-symmetric: m₊ = {}, m₋ = {}, m(F) = {}, e(F₁₂) = {}",
            dec.m_plus, dec.m_minus, prof.m_f, prof.e_f12
        )
        .unwrap();
        for (h, m) in &dec.type1 {
            write!(
                t,
                "\n  type 1: ({h})^{m}, {} circle pair(s)",
                prof.pairs_of(h)
            )
            .unwrap();
        }
        for (h, hs, m) in &dec.type2 {
            write!(t, "\n  type 2: ({h})^{m} and ({hs})^{m}").unwrap();
        }
        j["symmetric"] = json!({
            "m_plus": dec.m_plus, "m_minus": dec.m_minus, "m_outside": prof.m_f, "e_f12": prof.e_f12,
            "type1": dec.type1.iter().map(|(h, m)| json!({"factor": h.to_string(), "multiplicity": m, "circle_pairs": prof.pairs_of(h)})).collect::<Vec<_>>(),
            "type2": dec.type2.iter().map(|(h, hs, m)| json!({"factor": h.to_string(), "reciprocal": hs.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        });
    }
    Ok(Outcome::ok(t, j))
}

fn cyclo(cmd: &CycloCmd) -> Res {
    Ok(match *cmd {
        CycloCmd::Phi { n } => {
            let f = cyclotomic(n)?;
            Outcome::ok(
                format!("Φ_{n} = {f}"),
                json!({"n": n, "polynomial": f.to_string()}),
            )
        }
        CycloCmd::Shape { n, p } => {
            let s = cyclo_shape(n, p)?;
            Outcome::ok(
                s.to_string(),
                json!({
                    "n": s.n, "p": s.p, "e": s.e, "m": s.m, "factor_degree": s.factor_degree,
                    "factor_count": s.factor_count, "power": s.power, "symmetric": s.symmetric,
                }),
            )
        }
        CycloCmd::Pi { n, n2 } => {
            let ps = pi_cyclo(n, n2)?;
            Outcome::ok(
                format!("Π = {}", set_text(&ps)),
                json!({"n": n, "n2": n2, "primes": ps}),
            )
        }
        CycloCmd::Res { n, n2 } => {
            let r = apostol_resultant(n, n2)?;
            Outcome::ok(
                format!("Res(Φ_{n}, Φ_{n2}) = {r}"),
                json!({"n": n, "n2": n2, "resultant": r.to_string()}),
            )
        }
        CycloCmd::Csets { d } => {
            let (tilde, c) = c_sets(d)?;
            Outcome::ok(
                format!("C̃_{d} = {}\nC_{d} = {}", set_text(&tilde), set_text(&c)),
                json!({"d": d, "c_tilde": tilde, "c": c}),
            )
        }
        CycloCmd::Fiber { k } => {
            let ns = totient_fiber(k)?;
            Outcome::ok(
                format!("φ⁻¹({k}) = {}", set_text(&ns)),
                json!({"k": k, "fiber": ns}),
            )
        }
    })
}

fn pi(f: &str, g: &str) -> Res {
    let (f, g) = (poly(f)?, poly(g)?);
    let set = pi_set(&f, &g)?;
    let primes = set.prime_list();
    let mut t = if set.shared.is_empty() {
        format!("Π = {}", set_text(&primes))
    } else {
        let names: Vec<String> = set.shared.iter().map(ToString::to_string).collect();
        format!(
            "Π = every prime (shared factor {}); resultant primes {}",
            names.join(", "),
            set_text(&primes)
        )
    };
    for q in &set.primes {
        let common: Vec<String> = q.common.iter().map(|c| c.poly_string()).collect();
        write!(t, "\n  p = {}: common {}", q.p, common.join(", ")).unwrap();
    }
    for (q, why) in &set.undecided {
        write!(t, "\n  p = {q}: undecided ({why})").unwrap();
    }
    let j = json!({
        "f": f.to_string(), "g": g.to_string(), "primes": primes,
        "certificates": set.primes.iter().map(|q| json!({"p": q.p, "common": q.common.iter().map(mod_json).collect::<Vec<_>>()})).collect::<Vec<_>>(),
        "shared": set.shared.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "undecided": set.undecided.iter().map(|(q, why)| json!({"p": q.to_string(), "reason": why})).collect::<Vec<_>>(),
    });
    let mut out = Outcome::ok(t, j);
    if !set.is_decided() && primes.is_empty() && set.shared.is_empty() {
        out.status = Status::Undecided;
    }
    Ok(out)
}

fn symbol_json(s: &LocalSymbolSet) -> Value {
    json!({"p": s.p, "members": s.members.iter().map(mod_json).collect::<Vec<_>>()})
}

fn symbols(text: &str, p: u64, nonsquare: bool) -> Res {
    let f = poly(text)?;
    let s = if nonsquare {
        nonsquare_memberships(&f, p)?
    } else {
        symbol_set(&f, p)?
    };
    let mut j = symbol_json(&s);
    j["polynomial"] = json!(f.to_string());
    Ok(Outcome::ok(s.to_string(), j))
}

fn index_json(idx: &IndexMap) -> Value {
    json!({
        "signature": [idx.signature.0, idx.signature.1],
        "i_plus": idx.i_plus, "i_minus": idx.i_minus,
        "pairs": idx.per_factor.iter().map(|(g, v)| json!({"factor": g.to_string(), "values": v})).collect::<Vec<_>>(),
    })
}

fn classes_json(c: &EquivalenceClasses) -> Value {
    json!({
        "classes": c.classes.iter().map(|cl| cl.iter().map(|&k| c.members[k].to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(|e| json!({"f": e.f.to_string(), "g": e.g.to_string(), "p": e.p, "common": e.common.poly_string()})).collect::<Vec<_>>(),
    })
}

fn report_json(r: &ObstructionReport) -> Value {
    json!({
        "index": index_json(&r.index),
        "reference": index_json(&r.reference),
        "classes": classes_json(&r.classes),
        "values": r.values,
        "vanishes": r.vanishes,
        "reduced_rank": r.reduced_rank,
    })
}

fn parse_pair(s: &str, what: &str) -> Result<(i64, i64), Error> {
    match int_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Domain(format!(
            "{what} must be two comma-separated integers"
        ))),
    }
}

fn obstruct(
    text: &str,
    signature: Option<&str>,
    values: Option<&str>,
    limit: usize,
    vanishing: Option<&str>,
    g: Global,
) -> Res {
    let f = poly(text)?;
    let square = check_square(&f)?;
    if let Some(v) = vanishing {
        let (ip, im) = parse_pair(v, "--vanishing")?;
        let built = construct_vanishing_index_seeded(&f, ip, im, g.seed)?;
        let t = match &built.index {
            Some(idx) => format!("vanishing index: {idx}\nguarantee: {}", built.guarantee),
            None => format!("a vanishing index exists ({})", built.guarantee),
        };
        let j = json!({
            "polynomial": f.to_string(),
            "index": built.index.as_ref().map(index_json),
            "guarantee": built.guarantee.to_string(),
        });
        return Ok(Outcome::ok(t, j));
    }
    let Some(sig) = signature else {
        return Err(Error::Domain(
            "obstruct needs --signature r,s or --vanishing i₊,i₋".into(),
        ));
    };
    let (r, s) = parse_pair(sig, "--signature")?;
    if r < 0 || s < 0 {
        return Err(Error::Domain(
            "signature entries must be nonnegative".into(),
        ));
    }
    let (r, s) = (r as u64, s as u64);
    let sign = check_sign(&f, r, s)?;
    let maps = match values {
        Some(v) => {
            let vals = int_list(v)?;
            let template = enumerate_index_maps(&f, r, s, Some(1))?;
            let shape = template
                .first()
                .map(|m| m.per_factor.clone())
                .unwrap_or_default();
            vec![index_from_values(&vals, &shape, (r, s))?]
        }
        None => enumerate_index_maps(&f, r, s, Some(limit))?,
    };
    let mut t = format!(
        "F = {f}\nsquare: {square}\nsign at ({r}, {s}): {}",
        if sign { "holds" } else { "fails" }
    );
    let mut reports = Vec::new();
    let mut status = Status::Ok;
    for idx in &maps {
        match obstruction_map_seeded(&f, idx, g.seed) {
            Ok(rep) => {
                write!(t, "\n\n{rep}").unwrap();
                reports.push(report_json(&rep));
            }
            Err(e) => {
                let o = Outcome::from(e);
                status = status.max(o.status);
                write!(t, "\n\nindex: {idx}\n{}", o.text).unwrap();
                reports.push(json!({"index": index_json(idx), "error": o.json}));
            }
        }
    }
    if maps.is_empty() {
        t.push_str("\nno index maps");
    }
    let j = json!({
        "polynomial": f.to_string(), "square": square.holds(), "square_detail": square.to_string(),
        "sign": sign, "reports": reports,
    });
    Ok(Outcome {
        status,
        text: t,
        json: j,
    })
}

fn index_from_values(
    vals: &[i64],
    shape: &[(IntPolynomial, Vec<i64>)],
    sig: (u64, u64),
) -> Result<IndexMap, Error> {
    let slots: usize = shape.iter().map(|(_, v)| v.len()).sum();
    if vals.len() != 2 + slots {
        return Err(Error::Domain(format!(
            "--values needs {} entries (i₊, i₋ and {slots} pair values)",
            2 + slots
        )));
    }
    let mut it = vals[2..].iter().copied();
    let per_factor = shape
        .iter()
        .map(|(g, v)| (g.clone(), it.by_ref().take(v.len()).collect()))
        .collect();
    Ok(IndexMap {
        i_plus: vals[0],
        i_minus: vals[1],
        per_factor,
        signature: sig,
    })
}

fn verdict_json(v: &SalemVerdict) -> Value {
    json!({
        "polynomial": v.polynomial.to_string(),
        "degree": v.degree,
        "is_salem": v.is_salem,
        "realizable": match v.realizable {
            Realizability::Realizable => json!(true),
            Realizability::NotRealizable => json!(false),
            Realizability::Undecided => json!("undecided"),
        },
        "criterion": v.criterion.name(),
        "witnesses": v.witnesses.iter().map(|w| json!({
            "l": w.l,
            "primes": w.primes.iter().map(|q| json!({"p": q.p, "common_factor": q.common.first().map(ModPolynomial::poly_string)})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "undecided": v.undecided.iter().map(|u| json!({"l": u.l, "p": u.p.to_string(), "reason": u.reason})).collect::<Vec<_>>(),
        "witness_F": v.witness_f.as_ref().map(ToString::to_string),
    })
}

fn salem(cmd: &SalemCmd) -> Res {
    match cmd {
        SalemCmd::Check { poly: text } => {
            let s = poly(text)?;
            let yes = is_salem_polynomial(&s);
            Ok(Outcome::ok(
                format!(
                    "{s} {} a Salem polynomial",
                    if yes { "is" } else { "is not" }
                ),
                json!({"polynomial": s.to_string(), "is_salem": yes}),
            ))
        }
        SalemCmd::Realizable {
            poly: text,
            witness,
            scan,
            height,
        } => {
            if let Some(d) = scan {
                let found = scan_counterexamples(*d, *height)?;
                let mut t = format!(
                    "degree {d}, trace height {height}: {} not found realizable",
                    found.len()
                );
                for v in &found {
                    write!(t, "\n  {} ({})", v.polynomial, v.realizable).unwrap();
                }
                let j = json!({"degree": d, "height": height, "verdicts": found.iter().map(verdict_json).collect::<Vec<_>>()});
                let status = if found
                    .iter()
                    .any(|v| v.realizable == Realizability::Undecided)
                {
                    Status::Undecided
                } else {
                    Status::Ok
                };
                return Ok(Outcome {
                    status,
                    text: t,
                    json: j,
                });
            }
            let s = poly(text.as_deref().unwrap_or_default())?;
            let v = realizable_nonprojective_with(&s, RealizeOptions { witness: *witness })?;
            let status = if v.realizable == Realizability::Undecided {
                Status::Undecided
            } else {
                Status::Ok
            };
            Ok(Outcome {
                status,
                text: v.to_string(),
                json: verdict_json(&v),
            })
        }
    }
}

fn idx(text: &str, r: u64, s: u64, limit: Option<usize>) -> Res {
    let f = poly(text)?;
    let maps = enumerate_index_maps(&f, r, s, limit)?;
    let mut t = format!("{} index map(s) at ({r}, {s})", maps.len());
    for m in &maps {
        write!(t, "\n  {m}").unwrap();
    }
    Ok(Outcome::ok(
        t,
        json!({"polynomial": f.to_string(), "maps": maps.iter().map(index_json).collect::<Vec<_>>()}),
    ))
}
