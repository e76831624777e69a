//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use sidon_core::algebra::{AbelianGroup, FieldElement, FiniteField};
use sidon_core::dense::{
    construct_dense, coulter_matthews, is_nondegenerate, is_planar, planar_graph, polarization, x10_form, DenseName,
    PlanarCandidate, PlanarForm,
};
use sidon_core::incidence::{self_dual_via_negation, IncidenceStructure};
use sidon_core::planes3::{family_build, recover_constructions, Family};
use sidon_core::search::{self, OrderForm, Verdict, DEFAULT_BUDGET};
use sidon_core::sidon::{counting_bound, is_sidon, is_sidon_integers};
use sidon_core::sparse::{
    self, class_group_primes, framework::FrameworkSpec, framework_build, real_quadratic,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(q: u64) -> FiniteField {
    FiniteField::of_order(q).unwrap()
}

const PRIME_POWERS_16: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

// Oracles written independently of the library.

fn brute_group_sidon(g: &AbelianGroup, set: &[usize]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut sums = HashSet::new();
    for i in 0..s.len() {
        for j in i..s.len() {
            if !sums.insert(g.add(s[i], s[j])) {
                return false;
            }
        }
    }
    true
}

fn brute_integer_sidon(set: &[i64]) -> bool {
    let mut seen = HashSet::new();
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i..] {
            if !seen.insert(a + b) {
                return false;
            }
        }
    }
    true
}

fn brute_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn abelian_groups(n: u64) -> Vec<AbelianGroup> {
    fn chains(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for f in min..=rest {
            if rest % f == 0 && acc.last().map_or(true, |&l| f % l == 0) {
                acc.push(f);
                chains(rest / f, f, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    chains(n, 2, &mut Vec::new(), &mut out);
    out.into_iter()
        .filter(|c| c.windows(2).all(|w| w[1] % w[0] == 0) && c.iter().product::<u64>() == n)
        .map(|c| AbelianGroup::new(c).unwrap())
        .collect()
}

fn subsets_up_to(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(cur);
        if cur.len() == k {
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

// Criteria.

fn parameter_table() -> Check {
    // (|G|, |S|) as stated for each construction.
    let stated = |name: DenseName, q: u64| match name {
        DenseName::ErdosTuran => (q * q, q),
        DenseName::Singer => (q * q + q + 1, q + 1),
        DenseName::Bose => (q * q - 1, q),
        DenseName::Spence => (q * (q - 1), q - 1),
        DenseName::Hughes => ((q - 1) * (q - 1), q - 2),
    };
    let mut built = 0;
    for q in PRIME_POWERS_16 {
        let f = field(q);
        for name in DenseName::ALL {
            if name == DenseName::Singer && q > 13 {
                continue;
            }
            let c = match construct_dense(name, &f) {
                Ok(c) => c,
                Err(e) if name == DenseName::ErdosTuran && q % 2 == 0 => {
                    ensure!(e.to_string().contains("haracteristic"), "{name} q={q}: unexpected error {e}");
                    continue;
                }
                Err(e) => return Err(format!("{name} q={q}: {e}")),
            };
            let got = (c.group.order(), c.set.len() as u64);
            ensure!(got == stated(name, q), "{name} q={q}: got {got:?}, expected {:?}", stated(name, q));
            ensure!(is_sidon(&c.group, &c.set).is_sidon, "{name} q={q}: not Sidon");
            ensure!(brute_group_sidon(&c.group, &c.set), "{name} q={q}: oracle rejects");
            built += 1;
        }
    }
    Ok(format!("{built} constructions"))
}

fn correspondence() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0u64;
    let mut groups = 0;
    for n in 1..=24u64 {
        for g in abelian_groups(n) {
            groups += 1;
            let mut failure = None;
            let mut check = |s: &[usize]| {
                if failure.is_some() {
                    return;
                }
                let sidon = is_sidon(&g, s).is_sidon;
                let pls = IncidenceStructure::develop(&g, s).is_partial_linear_space().is_ok();
                if sidon != pls || sidon != brute_group_sidon(&g, s) {
                    failure = Some(format!("{:?} {s:?}: sidon={sidon} pls={pls}", g.factors()));
                } else if !self_dual_via_negation(&g, s) {
                    failure = Some(format!("{:?} {s:?}: negation is not a duality", g.factors()));
                }
                checked += 1;
            };
            if n <= 12 {
                subsets_up_to(n as usize, 5, &mut check);
            } else {
                let elems: Vec<usize> = (0..n as usize).collect();
                for _ in 0..5000 {
                    let k = rng.gen_range(0..=5);
                    let s: Vec<usize> = elems.choose_multiple(&mut rng, k).copied().collect();
                    check(&s);
                }
            }
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }
    Ok(format!("{groups} groups, {checked} sets"))
}

fn plane_recovery() -> Check {
    for q in [2u64, 3, 4, 5, 7, 8] {
        let c = construct_dense(DenseName::Singer, &field(q)).map_err(|e| e.to_string())?;
        let dev = IncidenceStructure::develop(&c.group, &c.set);
        ensure!(dev.is_projective_plane() == Ok(q), "q={q}: {:?}", dev.is_projective_plane());
        ensure!(dev.n_points() as u64 == q * q + q + 1, "q={q}: wrong point count");
    }
    let fano = IncidenceStructure::develop(&AbelianGroup::cyclic(7), &[1, 2, 4]);
    ensure!(fano.is_projective_plane() == Ok(2), "Fano: {:?}", fano.is_projective_plane());
    ensure!(fano.n_points() == 7 && fano.n_lines() == 7, "Fano: wrong size");
    for p in 0..7 {
        ensure!(fano.lines_through(p).len() == 3, "Fano: point {p} not on 3 lines");
    }
    Ok("q in {2,3,4,5,7,8} and Fano".into())
}

fn maximal_abelian() -> Check {
    let stated = |family: Family, q: u64| match family {
        Family::I => q * q + q + 1,
        Family::Ii => q * q - 1,
        Family::Iii => (q - 1) * (q - 1),
        Family::Iv => (q - 1) * q,
        Family::V | Family::Vi | Family::Vii => q * q,
        Family::Viii | Family::Ix => 9,
    };
    let mut extractions = 0;
    for q in [2u64, 3, 4, 5, 7, 9, 13] {
        let f = field(q);
        for family in Family::ALL {
            let cube_root = matches!(family, Family::Viii | Family::Ix);
            let action = family_build(&f, family);
            if cube_root && q % 3 != 1 {
                ensure!(action.is_err(), "({family}) q={q}: built without cube roots of unity");
                continue;
            }
            let action = action.map_err(|e| format!("({family}) q={q}: {e}"))?;
            ensure!(action.group().order() == stated(family, q), "({family}) q={q}: order {}", action.group().order());
            if let Ok(x) = action.extract_default() {
                let g = action.group().order() as i64;
                let (qi, n) = (q as i64, (q * q + q + 1) as i64);
                ensure!(x.d == x.outside_orbit, "({family}) q={q}: d={} but {} points outside", x.d, x.outside_orbit);
                ensure!(x.d * g <= (qi + 1) * (n - g), "({family}) q={q}: bound fails for d={}", x.d);
                ensure!(x.bound_ok && x.sidon, "({family}) q={q}: extraction flags");
                ensure!(brute_group_sidon(action.group(), &x.set), "({family}) q={q}: extracted set not Sidon");
                ensure!(x.set.len() as i64 == qi + 1 - x.d, "({family}) q={q}: |S| != q+1-d");
                extractions += 1;
            }
            if matches!(family, Family::Vi | Family::Vii) && q <= 7 {
                let n = action.plane().len();
                for p in 0..n {
                    for l in 0..n {
                        ensure!(action.extract_sidon(p, l).is_err(), "({family}) q={q}: regular pair ({p}, {l})");
                    }
                }
            }
        }
    }
    for q in [3u64, 5] {
        let f = field(q);
        for r in recover_constructions(&f).map_err(|e| e.to_string())? {
            let (Some(map), Some(x), Some(name)) = (&r.equivalence, &r.extraction, r.construction) else {
                return Err(format!("({}) q={q}: no equivalence ({:?})", r.family, r.note));
            };
            let direct = construct_dense(name, &f).map_err(|e| e.to_string())?;
            let mut image: Vec<usize> = x.set.iter().map(|&s| map.apply(&r.group, s)).collect();
            image.sort_unstable();
            let mut target = direct.set.clone();
            target.sort_unstable();
            ensure!(map.is_automorphism(&r.group), "({}) q={q}: map is not affine", r.family);
            ensure!(image == target, "({}) q={q}: map does not carry the extraction onto {name}", r.family);
        }
    }
    Ok(format!("{extractions} extractions within the bound"))
}

fn orbit_regression() -> Check {
    let expected = [(Family::I, 1), (Family::V, 3), (Family::Ii, 3), (Family::Iv, 5), (Family::Iii, 7)];
    for q in [3u64, 4, 5] {
        let f = field(q);
        for (family, t) in expected {
            let o = family_build(&f, family).and_then(|a| a.orbit_analysis()).map_err(|e| e.to_string())?;
            ensure!(o.t == t, "({family}) q={q}: t={} expected {t}", o.t);
            let total: usize = o.point_orbit_sizes.iter().sum();
            ensure!(total as u64 == q * q + q + 1, "({family}) q={q}: orbits do not partition the points");
        }
    }
    Ok("t = 1, 3, 3, 5, 7".into())
}

fn planar_suite() -> Check {
    let mut triples = Vec::new();
    for d in 1..=5u64 {
        for alpha in 1..=d {
            triples.push((3u64, d, alpha));
        }
    }
    triples.extend([(5, 2, 1), (5, 2, 2), (5, 3, 1), (7, 2, 1), (7, 2, 2)]);
    ensure!(triples.len() == 20, "triple list has {} entries", triples.len());
    let mut planar_found = Vec::new();
    for &(p, d, alpha) in &triples {
        ensure!(p.pow(d as u32) <= 243, "p^d too large");
        let f = FiniteField::new(p, d as usize).map_err(|e| e.to_string())?;
        let c = PlanarCandidate::monomial(&f, p.pow(alpha as u32) + 1);
        let g = (1..=alpha).rev().find(|k| alpha % k == 0 && d % k == 0).unwrap();
        let expected = (d / g) % 2 == 1;
        ensure!(is_planar(&c).is_ok() == expected, "x^({p}^{alpha}+1) over GF({p}^{d}): expected planar={expected}");
        if expected {
            planar_found.push(c);
        }
    }
    let cm = coulter_matthews(5, 3).map_err(|e| e.to_string())?;
    ensure!(cm.form == PlanarForm::Monomial(14), "Coulter-Matthews exponent {:?}", cm.form);
    ensure!(is_planar(&cm).is_ok(), "x^14 over GF(243) not planar");
    planar_found.push(cm);
    for d in [3usize, 5] {
        for sign in [1i64, -1] {
            let c = x10_form(d, sign).map_err(|e| e.to_string())?;
            ensure!(is_planar(&c).is_ok(), "x^10 {sign:+} x^6 - x^2 over GF(3^{d}) not planar");
            planar_found.push(c);
        }
    }
    let mut rng = StdRng::seed_from_u64(27);
    let mut agree = 0;
    for (q, count) in [(9u64, 50), (27, 50)] {
        let f = field(q);
        let d = f.degree();
        for _ in 0..count {
            let mut a = vec![vec![FieldElement(0); d]; d];
            for (i, row) in a.iter_mut().enumerate() {
                for x in row.iter_mut().skip(i) {
                    *x = FieldElement(rng.gen_range(0..q as u32));
                }
            }
            let c = PlanarCandidate::new(&f, PlanarForm::Quadratic(a)).map_err(|e| e.to_string())?;
            let planar = is_planar(&c).is_ok();
            let nondeg = is_nondegenerate(&polarization(&c).map_err(|e| e.to_string())?).is_ok();
            // direct polarization scan from the evaluated function
            let direct = f.elements().skip(1).all(|x| {
                f.elements().skip(1).all(|y| !f.sub(f.sub(c.eval(f.add(x, y)), c.eval(x)), c.eval(y)).is_zero())
            });
            ensure!(planar == nondeg && nondeg == direct, "GF({q}): planar={planar} nondegenerate={nondeg}");
            if planar {
                planar_found.push(c);
            }
            agree += 1;
        }
    }
    for c in &planar_found {
        let (g, s) = planar_graph(c).map_err(|e| e.to_string())?;
        let d = c.field.degree();
        let expected: Vec<usize> = (0..g.len()).filter(|&x| g.decode(x)[..d].iter().all(|&v| v == 0)).collect();
        let t = sidon_core::sidon::t_set(&g, &s);
        ensure!(t == expected, "t_set of graph over GF({}) is not {{0}} x F_q", c.field.order());
    }
    Ok(format!("{agree} random forms, {} planar graphs", planar_found.len()))
}

fn sparse_suite(large_d: &mut Option<Duration>) -> Check {
    let a = sparse::log_primes(100).map_err(|e| e.to_string())?;
    ensure!(a.sidon && brute_integer_sidon(&a.elements), "A: not Sidon");
    for m in [101u64, 10007] {
        let b = sparse::quotient_ring_primes(m).map_err(|e| e.to_string())?;
        ensure!(b.sidon && brute_group_sidon(&b.group, &b.set), "B m={m}: not Sidon");
    }
    let c = sparse::gaussian_angles(10_000).map_err(|e| e.to_string())?;
    ensure!(c.sidon && brute_integer_sidon(&c.elements), "C: not Sidon");
    for d in [1001u64, 31391, 99991] {
        let r = class_group_primes(d).map_err(|e| e.to_string())?;
        ensure!(r.sidon && brute_group_sidon(&r.group, &r.set), "D={d}: not Sidon");
    }
    for d in [2u64, 46] {
        let r = real_quadratic(d, false).map_err(|e| e.to_string())?;
        let g = AbelianGroup::cyclic(r.modulus);
        let set: Vec<usize> = r.elements.iter().map(|&x| x as usize).collect();
        ensure!(r.sidon && brute_group_sidon(&g, &set), "E D={d}: not Sidon");
    }
    for q in [7u64, 11] {
        let f = field(q);
        let (g, s) = sparse::cubic_graph(&f, &sparse::max_cubic_subset(&f)).map_err(|e| e.to_string())?;
        ensure!(is_sidon(&g, &s).is_sidon && brute_group_sidon(&g, &s), "F q={q}: not Sidon");
    }
    let base = [1i64, 2, 5, 11, 24];
    for eps in [[1i8, -1, 0, 1, -1], [-1, -1, -1, -1, -1], [0, 1, 1, 0, -1]] {
        let h = sparse::perturb(&base, &eps).map_err(|e| e.to_string())?;
        ensure!(is_sidon_integers(&h).sidon && brute_integer_sidon(&h), "H {eps:?}: not Sidon");
    }
    let fa = framework_build(&FrameworkSpec::log_primes(100)).map_err(|e| e.to_string())?;
    ensure!(fa.flat() == a.elements, "framework differs from A");
    for m in [101u64, 10007] {
        let b = sparse::quotient_ring_primes(m).map_err(|e| e.to_string())?;
        let fb = framework_build(&FrameworkSpec::quotient_ring(m)).map_err(|e| e.to_string())?;
        let flat: Vec<usize> = fb.flat().into_iter().map(|x| x as usize).collect();
        ensure!(flat == b.set, "framework differs from B at m={m}");
    }
    let hy = framework_build(&FrameworkSpec::hybrid(11, 10)).map_err(|e| e.to_string())?;
    ensure!(hy.check_i && hy.check_ii && hy.sidon, "hybrid m=11: checks failed");
    ensure!(brute_group_sidon(&hy.group, &hy.set), "hybrid m=11: oracle rejects");

    let start = Instant::now();
    let d = (100_000_000u64..).find(|&d| sidon_core::algebra::arith::is_squarefree(d) && d % 4 == 3).unwrap();
    let e = real_quadratic(d, true).map_err(|e| e.to_string())?;
    let set: Vec<usize> = e.elements.iter().map(|&x| x as usize).collect();
    ensure!(e.sidon && brute_group_sidon(&AbelianGroup::cyclic(e.modulus), &set), "E D={d}: not Sidon");
    *large_d = Some(start.elapsed());
    Ok(format!("large D={d}: {} elements mod {}", e.elements.len(), e.modulus))
}

fn search_oracle() -> Check {
    for n in 1..=16u64 {
        let g = AbelianGroup::cyclic(n);
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones();
            if k <= best {
                continue;
            }
            let s: Vec<usize> = (0..n as usize).filter(|&i| mask >> i & 1 == 1).collect();
            if brute_group_sidon(&g, &s) {
                best = k;
            }
        }
        let r = search::max_sidon(&g, DEFAULT_BUDGET);
        ensure!(r.exhaustive && r.sigma == best as u64, "Z/{n}: search {} brute {best}", r.sigma);
    }
    for (n, sigma, q) in [(7u64, 3u64, 2u64), (13, 4, 3), (21, 5, 4), (31, 6, 5)] {
        let g = AbelianGroup::cyclic(n);
        let r = search::max_sidon(&g, DEFAULT_BUDGET);
        ensure!(r.exhaustive && r.sigma == sigma, "sigma(Z/{n}) = {}", r.sigma);
        ensure!(counting_bound(n) == sigma, "counting bound for {n}");
        let c = construct_dense(DenseName::Singer, &field(q)).map_err(|e| e.to_string())?;
        ensure!(c.group.order() == n && c.set.len() as u64 == sigma, "Singer q={q} does not witness");
    }
    Ok("n <= 16 and sigma 3, 4, 5, 6".into())
}

fn conjecture_testers() -> Check {
    let run = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        pool.install(|| {
            let mut out = String::new();
            for p in [3u64, 5] {
                let r = search::test_t_subgroup(p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                if r.verdict == Verdict::Inconclusive || r.affine_classes.is_empty() {
                    return Err(format!("T p={p}: {:?}", r.verdict));
                }
                out += &serde_json::to_string(&r).unwrap();
            }
            for p in [2u64, 3] {
                let r = search::test_extendable(p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                if r.verdict == Verdict::Inconclusive {
                    return Err(format!("extendable p={p}: inconclusive"));
                }
                out += &serde_json::to_string(&r).unwrap();
            }
            Ok(out)
        })
    };
    let one = run(1)?;
    let two = run(2)?;
    let again = run(1)?;
    ensure!(one == two && one == again, "reports differ across runs or worker counts");
    Ok("deterministic over 1 and 2 workers".into())
}

fn admissible() -> Check {
    let mut table: BTreeMap<u64, Vec<(OrderForm, u64)>> = BTreeMap::new();
    for q in (2u64..=102).filter(|&q| brute_prime_power(q)) {
        let r = (1..=q).find(|r| r * r >= q).unwrap();
        let mut forms = vec![
            (OrderForm::Singer, q * q + q + 1),
            (OrderForm::Square, q * q),
            (OrderForm::SquareMinusOne, q * q - 1),
            (OrderForm::Pronic, q * (q - 1)),
            (OrderForm::ShiftedSquare, (q - 1) * (q - 1)),
        ];
        if r * r == q {
            forms.push((OrderForm::SquareMinusRoot, q * q - r));
        }
        for (form, n) in forms {
            table.entry(n).or_default().push((form, q));
        }
    }
    for n in 1..=10_000u64 {
        let mut got: Vec<(OrderForm, u64)> = search::admissible_orders(n).into_iter().map(|m| (m.form, m.q)).collect();
        got.sort();
        let mut want = table.get(&n).cloned().unwrap_or_default();
        want.sort();
        ensure!(got == want, "n={n}: got {got:?}, expected {want:?}");
    }
    for n in [7u64, 8, 12, 13, 16, 20, 21, 25] {
        ensure!(!search::admissible_orders(n).is_empty(), "{n} should be admissible");
    }
    ensure!(search::admissible_orders(22).is_empty(), "22 should not be admissible");
    Ok("n <= 10000".into())
}

fn main() {
    let mut large_d = None;
    let criteria: Vec<(&str, u64, Box<dyn FnOnce() -> Check + '_>)> = vec![
        ("parameter table", 10, Box::new(parameter_table)),
        ("correspondence", 60, Box::new(correspondence)),
        ("plane recovery", 30, Box::new(plane_recovery)),
        ("maximal abelian subgroups", 300, Box::new(maximal_abelian)),
        ("orbit regression", 60, Box::new(orbit_regression)),
        ("planar functions", 120, Box::new(planar_suite)),
        ("sparse constructions", 180, Box::new(|| sparse_suite(&mut large_d))),
        ("search oracle", 120, Box::new(search_oracle)),
        ("conjecture testers", 600, Box::new(conjecture_testers)),
        ("admissible orders", 1, Box::new(admissible)),
    ];
    let mut results = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        results.push((i + 1, name, limit, start.elapsed(), outcome));
    }
    let mut failed = 0;
    for (i, name, limit, elapsed, outcome) in results {
        let mut budget = elapsed;
        let mut extra = String::new();
        if i == 7 {
            if let Some(t) = large_d {
                budget = budget.saturating_sub(t);
                extra = format!(", large-D run {:.1}s of 900s", t.as_secs_f64());
                if t > Duration::from_secs(900) {
                    failed += 1;
                    println!("criterion {i} ({name}): FAIL large-D run took {:.1}s", t.as_secs_f64());
                    continue;
                }
            }
        }
        let timing = format!("{:.2}s of {limit}s{extra}", budget.as_secs_f64());
        match outcome {
            Ok(msg) if budget <= Duration::from_secs(limit) => println!("criterion {i} ({name}): PASS {msg} [{timing}]"),
            Ok(msg) => {
                failed += 1;
                println!("criterion {i} ({name}): FAIL over time limit, {msg} [{timing}]");
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {i} ({name}): FAIL {msg} [{timing}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
