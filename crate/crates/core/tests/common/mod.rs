// Oracles, random inputs and kernel checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use conequot::collections::{two_maximal_collections, Collection};
use conequot::cone::Cone;
use conequot::git::{git_cone, GitFan};
use conequot::grading::{is_pointed_grading, orbit_cones, validate, GradingInput, OrbitConeSet, ValidatedInput};
use conequot::lattice::{
    hermite_with_transform, int_vec, rational_rank, smith_normal_form, IntMatrix, IntVec, LatticeIndex, Sublattice,
};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------- strategies

pub fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

/// `(rank, generators)` with `rank <= max_rank`.
pub fn cone_input(max_rank: usize, max_gens: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_rank).prop_flat_map(move |n| {
        (Just(n), prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_gens))
    })
}

/// Two generator lists in the same rank.
pub fn lattice_pair(max_rank: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1..=max_rank).prop_flat_map(move |n| {
        let gens = prop::collection::vec(prop::collection::vec(-6i64..=6, n), 0..=n + 1);
        (Just(n), gens.clone(), gens)
    })
}

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    IntMatrix::from_i64_rows(&refs)
}

pub fn to_vecs(rows: &[Vec<i64>]) -> Vec<IntVec> {
    rows.iter().map(|r| int_vec(r)).collect()
}

// ------------------------------------------------------------ exact helpers

fn entry(m: &IntMatrix, i: usize, j: usize) -> BigInt {
    m.row(i)[j].clone()
}

/// Leibniz determinant of a square submatrix, independent of the kernel.
fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(Vec::new(), true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let swaps = n - 1 - pos;
                out.push((q, even == (swaps % 2 == 0)));
            }
        }
        out
    }
    let mut total = BigInt::zero();
    for (p, even) in perms(rows.len()) {
        let mut term = BigInt::one();
        for (i, &pj) in p.iter().enumerate() {
            term *= entry(m, rows[i], cols[pj]);
        }
        if even {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// gcd of all `k x k` minors.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            g = gcd(&g, &minor(m, &rs, &cs));
        }
    }
    g
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.determinant().abs().is_one()
}

/// Membership in the row lattice of an echelon basis by forward
/// substitution.
fn in_echelon_lattice(basis: &IntMatrix, x: &[BigInt]) -> bool {
    let mut rest: IntVec = x.to_vec();
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let Some(p) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        if rest[..p].iter().any(|e| !e.is_zero()) {
            return false;
        }
        if !(&rest[p] % &row[p]).is_zero() {
            return false;
        }
        let q = &rest[p] / &row[p];
        for (r, b) in rest.iter_mut().zip(row) {
            *r -= &q * b;
        }
    }
    rest.iter().all(Zero::is_zero)
}

// ------------------------------------------------------------ kernel checks

pub fn check_smith(rows: &[Vec<i64>]) -> Check {
    let m = to_matrix(rows);
    let f = smith_normal_form(&m);
    let usv = f.u.mul(&m).and_then(|x| x.mul(&f.v)).map_err(|e| e.to_string())?;
    ensure!(usv == f.s, "u*m*v != s for {m}");
    ensure!(f.s.is_diagonal(), "s is not diagonal: {}", f.s);
    ensure!(is_unimodular(&f.u) && is_unimodular(&f.v), "transforms not unimodular");
    let d = f.invariant_factors();
    ensure!(d.iter().all(|x| x.is_positive()), "non-positive invariant factor");
    for w in d.windows(2) {
        ensure!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
    }
    // d1 * ... * dk is the gcd of the k x k minors.
    let mut prod = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let expect = determinantal_divisor(&m, k);
        if k <= d.len() {
            prod *= &d[k - 1];
            ensure!(prod == expect, "product of first {k} factors {prod} != minor gcd {expect} for {m}");
        } else {
            ensure!(expect.is_zero(), "rank of {m} exceeds number of invariant factors");
        }
    }
    Ok(())
}

pub fn check_hermite(rows: &[Vec<i64>], mix: &[(usize, usize, i64)]) -> Check {
    let m = to_matrix(rows);
    let (h, u) = hermite_with_transform(&m);
    ensure!(u.mul(&m).map_err(|e| e.to_string())? == h, "u*m != h for {m}");
    ensure!(is_unimodular(&u), "transform not unimodular");
    // Echelon shape, positive pivots, reduced entries above pivots.
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        match h.row(i).iter().position(|e| !e.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                ensure!(!seen_zero, "nonzero row below a zero row in {h}");
                ensure!(last.is_none_or(|q| p > q), "pivots not increasing in {h}");
                let piv = entry(&h, i, p);
                ensure!(piv.is_positive(), "non-positive pivot in {h}");
                for r in 0..i {
                    let e = entry(&h, r, p);
                    ensure!(!e.is_negative() && e < piv, "entry above pivot not reduced in {h}");
                }
                last = Some(p);
            }
        }
    }
    // Uniqueness: mixing rows by a unimodular matrix leaves the form alone.
    let mut w = IntMatrix::identity(m.rows());
    for &(a, b, k) in mix {
        let (a, b) = (a % m.rows(), b % m.rows());
        if a == b {
            continue;
        }
        let mut e = IntMatrix::identity(m.rows());
        e[(a, b)] = k.into();
        w = e.mul(&w).map_err(|e| e.to_string())?;
    }
    let mixed = w.mul(&m).map_err(|e| e.to_string())?;
    let strip = |x: &IntMatrix| -> Vec<IntVec> { x.row_vecs().into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect() };
    ensure!(
        strip(&hermite_with_transform(&mixed).0) == strip(&h),
        "HNF not invariant under row mixing for {m}"
    );
    Ok(())
}

pub fn check_double_description(n: usize, gens: &[Vec<i64>], coeffs: &[u8]) -> Check {
    let g = to_vecs(gens);
    let c = Cone::from_generators(n, &g);
    for x in &g {
        ensure!(c.equations().iter().all(|e| dot(e, x).is_zero()), "generator off an equation of {c}");
        ensure!(c.facets().iter().all(|a| !dot(a, x).is_negative()), "generator violates a facet of {c}");
    }
    // Each facet normal is tight on dim-1 independent generators.
    for a in c.facets() {
        let tight: Vec<IntVec> = g.iter().filter(|x| dot(a, x).is_zero()).cloned().collect();
        ensure!(rational_rank(&tight, n) + 1 == c.dim(), "facet {a:?} of {c} is not supported");
        ensure!(g.iter().any(|x| dot(a, x).is_positive()), "facet {a:?} of {c} is an equation");
    }
    ensure!(c.dim() == rational_rank(&g, n), "dimension mismatch for {c}");
    // Round trips through both descriptions.
    let again = Cone::from_generators(n, &c.generators());
    ensure!(again == c, "V-description round trip changed {c} into {again}");
    let back = Cone::from_constraints(n, c.equations(), c.facets());
    ensure!(back == c, "H-description round trip changed {c} into {back}");
    // Nonnegative combinations stay inside.
    if !g.is_empty() {
        let mut p = vec![BigInt::zero(); n];
        for (x, &k) in g.iter().zip(coeffs.iter().cycle()) {
            for (pi, xi) in p.iter_mut().zip(x) {
                *pi += xi * BigInt::from(k);
            }
        }
        ensure!(c.contains(&p), "combination {p:?} not in {c}");
    }
    ensure!(c.relint_contains(&c.relint_point()), "relint point of {c} outside the relative interior");
    Ok(())
}

/// Strict positivity checked with raw dot products.
fn strictly_inside(c: &Cone, p: &[BigInt]) -> bool {
    c.equations().iter().all(|e| dot(e, p).is_zero()) && c.facets().iter().all(|a| dot(a, p).is_positive())
}

/// Searches positive combinations of the rays plus arbitrary small
/// combinations of the lineality basis for a common relative interior point.
fn brute_force_common_relint(a: &Cone, b: &Cone) -> bool {
    let n = a.ambient_rank();
    let mut gens: Vec<(IntVec, bool)> = a.rays().iter().map(|r| (r.clone(), true)).collect();
    gens.extend(a.lineality().iter().map(|r| (r.clone(), false)));
    let count = gens.len();
    if count > 6 {
        return false;
    }
    let mut idx = vec![0usize; count];
    loop {
        let mut p = vec![BigInt::zero(); n];
        for ((g, positive), &i) in gens.iter().zip(&idx) {
            let k = if *positive { i as i64 + 1 } else { i as i64 - 3 };
            for (pi, gi) in p.iter_mut().zip(g) {
                *pi += gi * BigInt::from(k);
            }
        }
        if strictly_inside(a, &p) && strictly_inside(b, &p) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == count {
                return false;
            }
            let max = if gens[pos].1 { 4 } else { 7 };
            idx[pos] += 1;
            if idx[pos] < max {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn check_relint_overlap(n: usize, ga: &[Vec<i64>], gb: &[Vec<i64>]) -> Check {
    let a = Cone::from_generators(n, &to_vecs(ga));
    let b = Cone::from_generators(n, &to_vecs(gb));
    let ab = a.relints_intersect(&b);
    ensure!(ab == b.relints_intersect(&a), "relint overlap not symmetric for {a}, {b}");
    ensure!(a.relints_intersect(&a), "{a} does not overlap itself");
    let p = a.intersect(&b).relint_point();
    if ab {
        ensure!(strictly_inside(&a, &p) && strictly_inside(&b, &p), "witness {p:?} not in both relints");
    } else {
        ensure!(!brute_force_common_relint(&a, &b), "{a} and {b} share a relint point");
    }
    ensure!(
        a.relint_within(&b) == (b.contains_cone(&a) && strictly_inside(&b, &a.relint_point())),
        "relint_within inconsistent for {a}, {b}"
    );
    if a.relint_within(&b) && a.dim() > 0 {
        ensure!(ab, "{a}° inside {b}° but relints disjoint");
    }
    Ok(())
}

pub fn check_lattice_intersection(n: usize, ga: &[Vec<i64>], gb: &[Vec<i64>]) -> Check {
    let a = Sublattice::from_generators(n, &to_vecs(ga)).map_err(|e| e.to_string())?;
    let b = Sublattice::from_generators(n, &to_vecs(gb)).map_err(|e| e.to_string())?;
    let c = a.intersect(&b).map_err(|e| e.to_string())?;
    for row in c.basis().row_vecs() {
        ensure!(in_echelon_lattice(a.basis(), &row), "{row:?} of {c} not in {a}");
        ensure!(in_echelon_lattice(b.basis(), &row), "{row:?} of {c} not in {b}");
    }
    // Generators of each lattice are members of its echelon basis lattice.
    for g in to_vecs(ga) {
        ensure!(in_echelon_lattice(a.basis(), &g), "generator {g:?} lost in {a}");
    }
    let mut both = to_vecs(ga);
    both.extend(to_vecs(gb));
    let sum = Sublattice::from_generators(n, &both).map_err(|e| e.to_string())?;
    ensure!(c.rank() + sum.rank() == a.rank() + b.rank(), "rank formula fails for {a}, {b}");
    // a / (a ∩ b) ≅ (a + b) / b gives [Z^n : a∩b] [Z^n : a+b] = [Z^n : a] [Z^n : b].
    if let (LatticeIndex::Finite(ia), LatticeIndex::Finite(ib)) = (a.index(), b.index()) {
        let (LatticeIndex::Finite(ic), LatticeIndex::Finite(is)) = (c.index(), sum.index()) else {
            return Err(format!("{a} ∩ {b} lost full rank"));
        };
        ensure!(ic * is == ia * ib, "index identity fails for {a}, {b}");
    }
    Ok(())
}

// ------------------------------------------------------------ random inputs

/// A random faithful suitable grading; `None` when the draw is rejected.
pub fn random_suitable(rng: &mut ChaCha8Rng, k: usize, max_r: usize, bound: i64, pointed: bool) -> Option<GradingInput> {
    let r = rng.gen_range(k.max(2)..=max_r);
    let lo = if pointed { 0 } else { -bound };
    let degrees: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..k).map(|_| rng.gen_range(lo..=bound)).collect())
        .collect();
    let named: Vec<(String, &[i64])> = degrees.iter().enumerate().map(|(i, d)| (format!("t{i}"), d.as_slice())).collect();
    let refs: Vec<(&str, &[i64])> = named.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let input = GradingInput::suitable(k, &refs);
    validate(&input).ok()?;
    Some(input)
}

pub fn prepare(input: &GradingInput) -> Option<(ValidatedInput, OrbitConeSet, bool)> {
    let v = validate(input).ok()?;
    let omega = orbit_cones(&v).ok()?;
    let pointed = is_pointed_grading(&v, &omega);
    Some((v, omega, pointed))
}

// ------------------------------------------------------------------ oracles

/// 2-maximal collections by enumerating every subset of the orbit cones.
pub fn brute_force_collections(omega: &OrbitConeSet) -> BTreeSet<Vec<usize>> {
    let n = omega.len();
    assert!(n <= 16, "brute force is exponential");
    let cones = omega.cones();
    let overlap: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| cones[i].relints_intersect(&cones[j])).collect())
        .collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let connected = s.iter().all(|&i| s.iter().all(|&j| overlap[i][j]));
        if !connected {
            continue;
        }
        let maximal = (0..n).filter(|i| mask & (1 << i) == 0).all(|i| s.iter().any(|&j| !overlap[i][j]));
        if maximal {
            out.insert(s);
        }
    }
    out
}

pub fn library_collections(omega: &OrbitConeSet) -> Result<BTreeSet<Vec<usize>>, String> {
    let cs: Vec<Collection> = two_maximal_collections(omega, 64).map_err(|e| e.to_string())?;
    Ok(cs.into_iter().map(|c| c.indices).collect())
}

/// Sample points for the GIT fan: a grid in `[-b, b]^k` and all sums of up
/// to three orbit-cone rays (these land in every cell of the arrangement of
/// a rank-2 grading).
pub fn fan_samples(omega: &OrbitConeSet, b: i64) -> Vec<IntVec> {
    let k = omega.rank();
    let mut pts: BTreeSet<IntVec> = BTreeSet::new();
    let mut idx = vec![-b; k];
    loop {
        pts.insert(int_vec(&idx));
        let mut pos = 0;
        loop {
            if pos == k {
                break;
            }
            idx[pos] += 1;
            if idx[pos] <= b {
                break;
            }
            idx[pos] = -b;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    let rays: BTreeSet<IntVec> = omega.cones().iter().flat_map(|c| c.generators()).collect();
    let rays: Vec<IntVec> = rays.into_iter().collect();
    for i in 0..rays.len() {
        for j in i..rays.len() {
            for l in j..rays.len() {
                let p: IntVec = (0..k).map(|t| &rays[i][t] + &rays[j][t] + &rays[l][t]).collect();
                pts.insert(p);
                let q: IntVec = (0..k).map(|t| &rays[i][t] + &rays[j][t]).collect();
                pts.insert(q);
            }
        }
    }
    pts.into_iter().collect()
}

/// `κ(u)` from the definition.
pub fn kappa_by_definition(omega: &OrbitConeSet, u: &[BigInt]) -> Cone {
    omega
        .cones()
        .iter()
        .filter(|c| c.contains(u))
        .fold(Cone::full(omega.rank()), |acc, c| acc.intersect(c))
}

/// Compares the fan with `κ(u)` over the sample points. With `complete`, every
/// fan cone must be hit; otherwise only the chambers.
pub fn check_fan_against_samples(omega: &OrbitConeSet, fan: &GitFan, samples: &[IntVec], complete: bool) -> Check {
    let cones: BTreeSet<&Cone> = fan.cones().iter().collect();
    let mut hit: BTreeSet<Cone> = BTreeSet::new();
    for u in samples.iter().filter(|u| omega.generic().contains(u)) {
        let k = kappa_by_definition(omega, u);
        ensure!(cones.contains(&k), "κ({u:?}) = {k} is not in the fan");
        ensure!(git_cone(omega, u).map_err(|e| e.to_string())? == k, "git_cone disagrees at {u:?}");
        let holders: Vec<&Cone> = fan.cones().iter().filter(|c| c.relint_contains(u)).collect();
        ensure!(holders.len() == 1 && *holders[0] == k, "{u:?} lies in {} relative interiors", holders.len());
        hit.insert(k);
    }
    for (i, c) in fan.cones().iter().enumerate() {
        if complete || fan.is_chamber(i) {
            ensure!(hit.contains(c), "fan cone {c} was not produced by any sample");
        }
    }
    Ok(())
}

// -------------------------------------------------- bunches and the order

pub fn classify_fixture(name: &str) -> Result<conequot::pipeline::Classification, String> {
    let text = conequot::fixtures::fixture(name).ok_or_else(|| format!("no fixture {name}"))?;
    let doc = conequot::io::parse_input(text, true).map_err(|e| e.to_string())?.document;
    conequot::pipeline::classify(&doc.to_grading(), conequot::pipeline::Options::default()).map_err(|e| e.to_string())
}

/// Bunch and collection maps are inverse, `⪯` is a partial order on all
/// 2-maximal collections, and on quasiprojective ones it agrees with the
/// face order of the GIT-cone witnesses.
pub fn check_bijection_and_order(cl: &conequot::pipeline::Classification) -> Check {
    use conequot::collections::{bunch_from_collection, collection_from_bunch, face_relation};
    let cs = &cl.collections;
    for c in cs {
        let b = bunch_from_collection(c);
        let back = collection_from_bunch(&b, &cl.omega).map_err(|e| format!("{c}: {e}"))?;
        ensure!(back.indices == c.indices, "{c} -> {b} -> {back}");
        ensure!(bunch_from_collection(&back) == b, "{b} does not survive the round trip");
    }
    let n = cs.len();
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| face_relation(&cs[i], &cs[j])).collect()).collect();
    for i in 0..n {
        ensure!(rel[i][i], "{} is not related to itself", cs[i]);
        for j in 0..n {
            ensure!(i == j || !(rel[i][j] && rel[j][i]), "{} and {} are mutually related", cs[i], cs[j]);
            if rel[i][j] {
                for l in 0..n {
                    ensure!(!rel[j][l] || rel[i][l], "transitivity fails at {i}, {j}, {l}");
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (Some(a), Some(b)) = (&cs[i].git_witness, &cs[j].git_witness) else { continue };
            ensure!(
                rel[i][j] == a.is_face_of(b),
                "{} ⪯ {} is {} but {a} face of {b} is {}",
                cs[i],
                cs[j],
                rel[i][j],
                !rel[i][j]
            );
        }
    }
    Ok(())
}
