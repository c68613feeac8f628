//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `DOCUMENTED_DEVIATIONS` are known to disagree with the
//! stated expectation; they are still evaluated and reported, but do not fail
//! the test target.

use std::collections::BTreeSet;
use std::time::Instant;

use k3_obstruction::cyclotomic::{
    apostol_resultant, c_sets, cyclo_shape, cyclotomic, pi_cyclo, totient_fiber,
};
use k3_obstruction::intpoly::{discriminant_abs, resultant, IntPolynomial};
use k3_obstruction::modp::{factor_mod_p, is_star_symmetric_mod_p, reduce_mod_p, ModPolynomial};
use k3_obstruction::obstruction::{
    check_sign, check_square, construct_vanishing_index_seeded, enumerate_index_maps,
    equivalence_classes, obstruction_map, obstruction_map_seeded, IndexMap,
};
use k3_obstruction::padic::{nonsquare_memberships, pi_set, symbol_set};
use k3_obstruction::salem::{
    build_witness, i_delta, is_salem_polynomial, realizable_nonprojective, salem_polynomials,
    Realizability,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Res(Φ₁₂, X - 1) = Φ₁₂(1) = 1, not -1; see the README.
const DOCUMENTED_DEVIATIONS: &[u32] = &[2];

const LEHMER: &str = "X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1";

/// Witnesses for the Lehmer polynomial, fixed from a brute-force oracle run
/// before the decision procedure was written.
const LEHMER_WITNESSES: &[(u64, &[u64])] =
    &[(4, &[3]), (12, &[3]), (14, &[13]), (15, &[29]), (36, &[3])];

type Check = Result<String, String>;

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn phi(n: u64) -> IntPolynomial {
    cyclotomic(n).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime_divisors(n: &BigInt) -> BTreeSet<u64> {
    let mut n = n.abs();
    let mut out = BTreeSet::new();
    let mut q = 2u64;
    while n > BigInt::one() {
        let bq = BigInt::from(q);
        if &bq * &bq > n {
            out.insert(n.to_u64().expect("small prime"));
            break;
        }
        while n.is_multiple_of(&bq) {
            out.insert(q);
            n /= &bq;
        }
        q += 1;
    }
    out
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 2..=60u64 {
        for n2 in 1..n {
            let closed = apostol_resultant(n, n2).map_err(|e| e.to_string())?;
            let exact = resultant(&phi(n), &phi(n2)).map_err(|e| e.to_string())?;
            ensure(closed == exact, || {
                format!("(n, n') = ({n}, {n2}): closed {closed}, exact {exact}")
            })?;
            pairs += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(pairs == 1770, || format!("{pairs} pairs"))?;
    ensure(secs < 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!("{pairs} pairs equal in {secs:.2} s"))
}

fn criterion_2() -> Check {
    let set = pi_set(&phi(12), &p("X - 1")).map_err(|e| e.to_string())?;
    let res = resultant(&phi(12), &p("X - 1")).map_err(|e| e.to_string())?;
    let empty = set.is_empty();
    let minus_one = res == BigInt::from(-1);
    let detail = format!(
        "Π(Φ12, X - 1) {}; Res(Φ12, X - 1) = {res}",
        if empty { "= ∅" } else { "≠ ∅" }
    );
    if empty && minus_one {
        Ok(detail)
    } else {
        Err(format!("{detail}, expected -1"))
    }
}

fn criterion_3() -> Check {
    let base = pi_set(&phi(3), &phi(6)).map_err(|e| e.to_string())?;
    ensure(base.prime_list() == vec![2], || {
        format!("Π(Φ3, Φ6) = {:?}", base.prime_list())
    })?;
    let (_, c10) = c_sets(10).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (i, &a) in c10.iter().enumerate() {
        for &b in &c10[i + 1..] {
            let closed = pi_cyclo(a, b).map_err(|e| e.to_string())?;
            let general = pi_set(&phi(a), &phi(b)).map_err(|e| e.to_string())?;
            ensure(general.is_decided(), || format!("Π(Φ{a}, Φ{b}) undecided"))?;
            ensure(closed == general.prime_list(), || {
                format!(
                    "Π(Φ{a}, Φ{b}): closed {closed:?}, engine {:?}",
                    general.prime_list()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("Π(Φ3, Φ6) = {{2}}; {checked} pairs over C10 agree"))
}

fn criterion_4() -> Check {
    let (_, c18) = c_sets(18).map_err(|e| e.to_string())?;
    for &l in &c18 {
        let set = pi_set(&phi(20), &phi(l)).map_err(|e| e.to_string())?;
        ensure(set.is_empty(), || {
            format!("Π(Φ20, Φ{l}) = {:?}", set.prime_list())
        })?;
        let closed = pi_cyclo(20, l).map_err(|e| e.to_string())?;
        ensure(closed.is_empty(), || {
            format!("closed rule gives {closed:?} for l = {l}")
        })?;
    }
    Ok(format!("Π(Φ20, Φl) = ∅ for l ∈ {c18:?}"))
}

fn criterion_5() -> Check {
    let s = symbol_set(&p("X^2 - 11X + 1"), 3).map_err(|e| e.to_string())?;
    ensure(s.is_empty(), || format!("got {s}"))?;
    Ok("symbol_set(X^2 - 11X + 1, 3) = ∅".into())
}

fn criterion_6() -> Check {
    let c10_lit = vec![
        1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 21, 22, 24, 28, 30, 36, 42,
    ];
    let c18_lit = vec![1, 2, 3, 4, 6, 12];
    let (t10, c10) = c_sets(10).map_err(|e| e.to_string())?;
    let (t18, c18) = c_sets(18).map_err(|e| e.to_string())?;
    ensure(c10 == c10_lit, || format!("C10 = {c10:?}"))?;
    ensure(c18 == c18_lit, || format!("C18 = {c18:?}"))?;
    ensure(t18 == c18, || "C̃18 ≠ C18".into())?;
    ensure(t10.contains(&20) && !c10.contains(&20), || {
        "20 handling".into()
    })?;
    for l in [13, 26] {
        ensure(!t10.contains(&l), || {
            format!("{l} should fail the square condition")
        })?;
        ensure(!check_square(&phi(l)).unwrap().holds(), || {
            format!("Φ{l} satisfies the square condition")
        })?;
    }
    let table: &[(u64, &[u64])] = &[
        (1, &[1, 2]),
        (2, &[3, 4, 6]),
        (4, &[5, 8, 10, 12]),
        (6, &[7, 9, 14, 18]),
        (8, &[15, 16, 20, 24, 30]),
        (10, &[11, 22]),
        (12, &[21, 28, 36, 42]),
    ];
    for &(k, listed) in table {
        let fiber = totient_fiber(k).map_err(|e| e.to_string())?;
        let restricted: Vec<u64> = fiber
            .iter()
            .copied()
            .filter(|n| listed.contains(n))
            .collect();
        ensure(restricted == listed, || format!("φ⁻¹({k}) = {fiber:?}"))?;
    }
    let extra: Vec<u64> = totient_fiber(12)
        .unwrap()
        .into_iter()
        .filter(|n| ![21, 28, 36, 42].contains(n))
        .collect();
    Ok(format!(
        "C10, C18 literal; table rows agree (φ⁻¹(12) also holds {extra:?}, absent from the table)"
    ))
}

fn criterion_7() -> Check {
    let primes: Vec<u64> = (2..=50).filter(|&q| (2..q).all(|d| q % d != 0)).collect();
    let mut checked = 0;
    for n in 1..=105u64 {
        let f = phi(n);
        for &q in &primes {
            let shape = cyclo_shape(n, q).map_err(|e| e.to_string())?;
            let fac = factor_mod_p(&reduce_mod_p(&f, q).map_err(|e| e.to_string())?);
            let ctx = || format!("Φ{n} mod {q}: shape {shape}, factors {}", fac.len());
            ensure(fac.len() as u64 == shape.factor_count, ctx)?;
            for (g, e) in &fac {
                ensure(
                    g.deg() as u64 == shape.factor_degree && u64::from(*e) == shape.power,
                    ctx,
                )?;
                let sym = is_star_symmetric_mod_p(g).map_err(|e| e.to_string())?;
                ensure(sym == shape.symmetric, ctx)?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, p) shapes match factor_mod_p"))
}

fn criterion_8() -> Check {
    let f = p("X - 1").pow(4) * phi(12);
    let top = enumerate_index_maps(&f, 8, 0, None).map_err(|e| e.to_string())?;
    ensure(top.len() == 1, || format!("{} maps at (8, 0)", top.len()))?;
    let rep = obstruction_map(&f, &top[0]).map_err(|e| e.to_string())?;
    let k = rep
        .classes
        .class_of(&p("X - 1"))
        .ok_or("X - 1 not in a class")?;
    ensure(!rep.vanishes && rep.values[k] == 1, || {
        format!("(8, 0): {rep}")
    })?;
    // t' = t_f ⊕ id on the (X - 1)^4 part: X - 1 ↦ 0, Φ12 pairs balanced
    let mid = IndexMap {
        i_plus: 0,
        i_minus: 0,
        per_factor: vec![(phi(12), vec![-2, 2])],
        signature: (4, 4),
    };
    let rep = obstruction_map(&f, &mid).map_err(|e| e.to_string())?;
    ensure(rep.vanishes, || format!("(4, 4): {rep}"))?;
    Ok("(8, 0) maximal index: bit 1 on 1_{X-1}; (4, 4): vanishes".into())
}

/// A random product of cyclotomic polynomials of degree at most `max_deg`.
fn random_cyclo_product(rng: &mut ChaCha8Rng, pool: &[u64], max_deg: usize) -> IntPolynomial {
    let mut f = IntPolynomial::one();
    for _ in 0..rng.gen_range(1..=3) {
        let g = phi(*pool.choose(rng).unwrap());
        let e = rng.gen_range(1..=2);
        let next = &f * &g.pow(e);
        if next.deg() <= max_deg {
            f = next;
        }
    }
    if f.deg() == 0 {
        f = phi(*pool.choose(rng).unwrap());
    }
    f
}

fn property_a_b(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let pool: Vec<u64> = (1..=30).filter(|&n| phi(n).deg() <= 8).collect();
    for _ in 0..500 {
        let f = random_cyclo_product(rng, &pool, 12);
        let g = random_cyclo_product(rng, &pool, 12);
        let res = resultant(&f, &g).map_err(|e| e.to_string())?;
        let set = pi_set(&f, &g).map_err(|e| e.to_string())?;
        if !res.is_zero() {
            let divisors = prime_divisors(&res);
            for q in set.prime_list() {
                ensure(divisors.contains(&q), || {
                    format!("Π({f}, {g}) ∋ {q} ∤ Res = {res}")
                })?;
            }
        }
        if f.eval_i64(1).is_zero() || f.eval_i64(-1).is_zero() {
            continue;
        }
        let mut probe: BTreeSet<u64> = set.prime_list().into_iter().collect();
        probe.extend([2, 3]);
        for q in probe {
            let sub = nonsquare_memberships(&f, q).map_err(|e| e.to_string())?;
            let all = symbol_set(&f, q).map_err(|e| e.to_string())?;
            for m in &sub.members {
                ensure(all.contains(m), || {
                    format!("{f} at {q}: {} not in {all}", m.poly_string())
                })?;
            }
        }
    }
    Ok(500)
}

fn property_c(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let pool: Vec<u64> = (3..=30).filter(|&n| phi(n).deg() <= 6).collect();
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {done} admissible products found"));
        }
        let mp = *[0u32, 2, 3, 4].choose(rng).unwrap();
        let mm = *[0u32, 2, 3, 4].choose(rng).unwrap();
        let core = random_cyclo_product(rng, &pool, 12);
        let f = p("X - 1").pow(mp) * p("X + 1").pow(mm) * core;
        if f.deg() % 2 == 1 || f.deg() > 20 || !check_square(&f).map_err(|e| e.to_string())?.holds()
        {
            continue;
        }
        let n = (f.deg() / 2) as u64;
        let Some(idx) = enumerate_index_maps(&f, n, n, Some(1))
            .map_err(|e| e.to_string())?
            .pop()
        else {
            continue;
        };
        let (s1, s2) = (rng.gen::<u64>(), rng.gen::<u64>());
        let j1 = construct_vanishing_index_seeded(&f, idx.i_plus, idx.i_minus, Some(s1))
            .map_err(|e| format!("{f}: {e}"))?
            .index
            .ok_or("no explicit index")?;
        let rep = obstruction_map_seeded(&f, &j1, Some(s2)).map_err(|e| format!("{f}: {e}"))?;
        ensure(rep.vanishes, || {
            format!("{f}: seeds {s1}, {s2} disagree\n{rep}")
        })?;
        done += 1;
    }
    Ok(done)
}

/// Products of cyclotomic polynomials of even degree at most 12, with each
/// factor of degree at most 4 used at most twice, plus Salem examples.
fn congruence_corpus() -> Vec<IntPolynomial> {
    let pool: Vec<u64> = (1..=12).filter(|&n| phi(n).deg() <= 4).collect();
    let mut out = Vec::new();
    fn rec(pool: &[u64], start: usize, acc: IntPolynomial, out: &mut Vec<IntPolynomial>) {
        if acc.deg() > 0 && acc.deg().is_multiple_of(2) {
            out.push(acc.clone());
        }
        for i in start..pool.len() {
            let g = phi(pool[i]);
            let mut next = acc.clone();
            for _ in 0..2 {
                next = &next * &g;
                if next.deg() > 12 {
                    break;
                }
                rec(pool, i + 1, next.clone(), out);
            }
        }
    }
    rec(&pool, 0, IntPolynomial::one(), &mut out);
    out.push(p(LEHMER));
    out.push(p("X^4 - X^3 - X^2 - X + 1") * p("X - 1").pow(2));
    out.push(p("X^4 - X^3 - X^2 - X + 1") * p("X + 1").pow(2) * phi(3));
    out
}

fn property_d() -> Result<(usize, usize), String> {
    let mut polys = 0;
    let mut maps = 0;
    for f in congruence_corpus() {
        if !check_square(&f).map_err(|e| e.to_string())?.holds() {
            continue;
        }
        let deg = f.deg() as u64;
        let f12 = {
            let mut g = f.clone();
            for lin in [p("X - 1"), p("X + 1")] {
                while let Some(q) = g.exact_div(&lin) {
                    g = q;
                }
            }
            g
        };
        let e = if f12.deg() == 0 {
            1
        } else {
            let v = f12.eval_i64(1) * f12.eval_i64(-1);
            let s = if (f12.deg() / 2) % 2 == 1 {
                -v.signum()
            } else {
                v.signum()
            };
            s.to_i64().unwrap()
        };
        polys += 1;
        for r in 0..=deg {
            let s = deg - r;
            if (r as i64 - s as i64).rem_euclid(8) != 0
                || !check_sign(&f, r, s).map_err(|e| e.to_string())?
            {
                continue;
            }
            for m in enumerate_index_maps(&f, r, s, None).map_err(|e| e.to_string())? {
                ensure((m.i_plus + m.i_minus - (1 - e)).rem_euclid(4) == 0, || {
                    format!("{f} at ({r}, {s}): {m}")
                })?;
                maps += 1;
            }
        }
    }
    Ok((polys, maps))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let a = property_a_b(&mut rng)?;
    let c = property_c(&mut rng)?;
    let (polys, maps) = property_d()?;
    Ok(format!(
        "(a, b) {a} pairs; (c) {c} products; (d) {maps} index maps over {polys} polynomials"
    ))
}

/// Symbol set by reduction mod p when p does not divide the discriminant,
/// otherwise by the full local engine.
fn oracle_symbols(q: &IntPolynomial, p: u64) -> Vec<ModPolynomial> {
    if q.deg() == 1 {
        return vec![reduce_mod_p(q, p).unwrap()];
    }
    let disc = discriminant_abs(q).unwrap();
    if disc.is_multiple_of(&BigInt::from(p)) {
        return symbol_set(q, p).unwrap().members;
    }
    factor_mod_p(&reduce_mod_p(q, p).unwrap())
        .into_iter()
        .filter(|(g, _)| is_star_symmetric_mod_p(g).unwrap())
        .map(|(g, _)| g)
        .collect()
}

fn oracle_witnesses(s: &IntPolynomial, d: u32) -> Vec<(u64, Vec<u64>)> {
    let (_, c) = c_sets(d).unwrap();
    let mut out = Vec::new();
    for l in c {
        let g = phi(l);
        let res = resultant(s, &g).unwrap();
        let mut primes = Vec::new();
        for q in prime_divisors(&res) {
            let a = oracle_symbols(s, q);
            let b = oracle_symbols(&g, q);
            if a.iter().any(|x| b.contains(x)) {
                primes.push(q);
            }
        }
        if !primes.is_empty() {
            out.push((l, primes));
        }
    }
    out
}

fn criterion_10() -> Check {
    let s = p(LEHMER);
    ensure(is_salem_polynomial(&s), || {
        "Lehmer polynomial not recognized".into()
    })?;
    let expected: Vec<(u64, Vec<u64>)> = LEHMER_WITNESSES
        .iter()
        .map(|(l, ps)| (*l, ps.to_vec()))
        .collect();
    let oracle = oracle_witnesses(&s, 10);
    ensure(oracle == expected, || format!("oracle {oracle:?}"))?;
    let v = realizable_nonprojective(&s).map_err(|e| e.to_string())?;
    let got: Vec<(u64, Vec<u64>)> = v
        .witnesses
        .iter()
        .map(|w| (w.l, w.primes.iter().map(|q| q.p).collect()))
        .collect();
    ensure(
        v.realizable == Realizability::Realizable && got == expected,
        || format!("engine {got:?}"),
    )?;

    let mut pairs = Vec::new();
    for poly in salem_polynomials(10, 1).map_err(|e| e.to_string())? {
        if !check_square(&poly).unwrap().holds() {
            continue;
        }
        let v = realizable_nonprojective(&poly).map_err(|e| e.to_string())?;
        pairs.extend(v.witnesses.iter().map(|w| (poly.clone(), w.l)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    pairs.shuffle(&mut rng);
    pairs.truncate(20);
    ensure(pairs.len() == 20, || {
        format!("only {} (S, l) pairs available", pairs.len())
    })?;
    for (poly, l) in &pairs {
        let f = build_witness(poly, *l).map_err(|e| format!("S = {poly}, l = {l}: {e}"))?;
        let ctx = || format!("witness for S = {poly}, l = {l}");
        ensure(f.deg() == 22 && f.exact_div(poly).is_some(), ctx)?;
        ensure(check_square(&f).unwrap().holds(), ctx)?;
        let idx = i_delta(&f, poly, 0).map_err(|e| e.to_string())?;
        let classes =
            equivalence_classes(&f, idx.i_plus, idx.i_minus).map_err(|e| e.to_string())?;
        ensure(classes.is_weakest(), ctx)?;
    }
    let ls: BTreeSet<u64> = pairs.iter().map(|(_, l)| *l).collect();
    Ok(format!(
        "Lehmer witnesses match the oracle; 20 witnesses checked (l ∈ {ls:?})"
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n:>2}: PASS  {detail}"),
            Err(detail) => {
                let note = if DOCUMENTED_DEVIATIONS.contains(&n) {
                    " (documented deviation)"
                } else {
                    ""
                };
                println!("criterion {n:>2}: FAIL  {detail}{note}");
                if note.is_empty() {
                    unexpected.push(n);
                }
            }
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
