//! Test-only oracles and fan corpora. Nothing here calls the code path it is
//! used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_a1::fan::{hirzebruch, kleinschmidt, projective_space, star_subdivision};
use toric_a1::{Fan, IntVector, RaySet};

pub fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

// ---------------------------------------------------------------- minors

/// Determinant by cofactor expansion; independent of the library's Bareiss routine.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k x k` minors of a matrix given by rows.
pub fn minor_gcd(rows: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut g = BigInt::zero();
    for ri in combinations(r, k) {
        for ci in combinations(c, k) {
            let sub: Vec<Vec<BigInt>> = ri
                .iter()
                .map(|&i| ci.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            g = g.gcd(&det_cofactor(&sub));
        }
    }
    g
}

/// Invariant factors from determinantal divisors: `d_1 ... d_k = gcd of k x k minors`.
pub fn invariant_factors_by_minors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=r.min(c) {
        let g = minor_gcd(rows, k);
        if g.is_zero() {
            out.push(BigInt::zero());
            prev = BigInt::zero();
            continue;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Extends to a lattice basis iff the `k x k` minors have gcd 1.
pub fn unimodular_by_minors(vectors: &[IntVector], dim: usize) -> bool {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    vectors.len() <= dim && minor_gcd(&rows, vectors.len()) == BigInt::from(1)
}

// ---------------------------------------------------------------- membership

/// Solves `sum lambda_i g_i = x` over the rationals; `None` if inconsistent.
fn solve_rational(gens: &[IntVector], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = x.len();
    let k = gens.len();
    // Augmented n x (k+1) system.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = gens.iter().map(|g| BigRational::from_integer(g[i].clone())).collect();
            row.push(x[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut lambda = vec![BigRational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        lambda[c] = a[row][k].clone();
    }
    Some(lambda)
}

/// Exact membership of `x` in the cone spanned by `gens`.
pub fn in_cone(gens: &[IntVector], x: &[BigRational]) -> bool {
    match solve_rational(gens, x) {
        Some(l) => l.iter().all(|t| !t.is_negative()),
        None => false,
    }
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| *x)
                    .collect()
            })
            .collect();
        let term = m[0][j] * det_i128(&minor);
        total += if j % 2 == 0 { term } else { -term };
    }
    total
}

/// Cramer's rule for a full-dimensional simplicial cone with small entries:
/// `x` is inside iff every `det(G with column i replaced by x)` has the sign
/// of `det(G)` or vanishes. `None` when the fast path does not apply.
fn in_full_cone_cramer(gens: &[IntVector], x: &[i64]) -> Option<bool> {
    let n = x.len();
    if gens.len() != n || n > 6 {
        return None;
    }
    let mut cols: Vec<Vec<i128>> = Vec::with_capacity(n);
    for g in gens {
        let mut c = Vec::with_capacity(n);
        for e in g.entries() {
            let small: i64 = e.try_into().ok()?;
            if small.abs() > 1_000 {
                return None;
            }
            c.push(small as i128);
        }
        cols.push(c);
    }
    let as_rows =
        |cols: &[Vec<i128>]| -> Vec<Vec<i128>> { (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect() };
    let d = det_i128(&as_rows(&cols));
    if d == 0 {
        return None;
    }
    Some((0..n).all(|i| {
        let mut swapped = cols.clone();
        swapped[i] = x.iter().map(|&t| t as i128).collect();
        let di = det_i128(&as_rows(&swapped));
        di == 0 || (di > 0) == (d > 0)
    }))
}

/// A point of the unit sphere scaled by 10^9 and rounded to integers.
pub fn random_sphere_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<i64> {
    loop {
        let g: Vec<f64> = (0..dim)
            .map(|_| {
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        return g.iter().map(|x| (x / norm * 1e9).round() as i64).collect();
    }
}

/// Exact membership of the integer point `x`, using Cramer's rule where it
/// applies and rational elimination otherwise.
pub fn in_cone_int(gens: &[IntVector], x: &[i64]) -> bool {
    in_full_cone_cramer(gens, x).unwrap_or_else(|| {
        let q: Vec<BigRational> = x.iter().map(|&t| BigRational::from_integer(BigInt::from(t))).collect();
        in_cone(gens, &q)
    })
}

/// Monte-Carlo oracle: every sample lies in some maximal cone.
pub fn sampled_complete(fan: &Fan, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cones: Vec<Vec<IntVector>> = fan.max_cones().iter().map(|c| c.generators(fan.rays())).collect();
    (0..samples).all(|_| {
        let x = random_sphere_point(&mut rng, fan.dim());
        cones.iter().any(|g| in_cone_int(g, &x))
    })
}

// ---------------------------------------------------------------- subsets

/// Minimal non-faces by enumerating every subset of rays.
pub fn nonfaces_by_subsets(fan: &Fan) -> Vec<RaySet> {
    let n = fan.num_rays();
    assert!(n <= 20, "subset enumeration is exponential");
    let is_face = |s: RaySet| fan.max_cones().iter().any(|c| s.is_subset(c.0));
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << n) {
        let s: RaySet = (0..n).filter(|i| bits & (1 << i) != 0).collect();
        if !is_face(s) && s.iter().all(|i| is_face(s.without(i))) {
            out.push(s);
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------- corpora

pub fn blowup_pn(n: usize) -> Fan {
    star_subdivision(&projective_space(n).unwrap(), RaySet::full(n)).unwrap()
}

/// `Bl_{x,x'} P^n`: blow up the cones `{e_1..e_n}` and `{e_2..e_{n+1}}`.
pub fn double_blowup_pn(n: usize) -> Fan {
    let once = blowup_pn(n);
    star_subdivision(&once, RaySet::from_indices(1..=n)).unwrap()
}

/// All `(d, a)` with `2 <= d <= max_d`, `1 <= len(a) <= d - 1` and `a`
/// non-decreasing with entries `<= max_entry`.
pub fn kleinschmidt_parameters(max_d: usize, max_entry: u64) -> Vec<(usize, Vec<u64>)> {
    fn tuples(len: usize, min: u64, max: u64) -> Vec<Vec<u64>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in min..=max {
            for mut rest in tuples(len - 1, first, max) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for d in 2..=max_d {
        for r in 1..d {
            out.extend(tuples(r, 0, max_entry).into_iter().map(|a| (d, a)));
        }
    }
    out
}

pub fn builtin_fans() -> Vec<Fan> {
    let mut fans = Vec::new();
    for n in 1..=5 {
        fans.push(projective_space(n).unwrap());
    }
    for a in 0..=5 {
        fans.push(hirzebruch(a).unwrap());
    }
    for (d, a) in kleinschmidt_parameters(4, 2) {
        fans.push(kleinschmidt(d, &a).unwrap());
    }
    for n in 2..=4 {
        fans.push(blowup_pn(n));
        fans.push(double_blowup_pn(n));
    }
    fans
}

/// A random face of size >= 2 of a fan of dimension >= 2.
pub fn random_face(fan: &Fan, rng: &mut ChaCha8Rng) -> RaySet {
    let cone = fan.max_cones()[rng.gen_range(0..fan.max_cones().len())].0;
    let elems = cone.to_vec();
    loop {
        let s: RaySet = elems.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if s.len() >= 2 {
            return s;
        }
    }
}

/// `count` fans from random star-subdivision chains of depth 1..=4 over P^2 and P^3.
pub fn random_chain_fans(count: usize, seed: u64) -> Vec<Fan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut f = projective_space(2 + i % 2).unwrap();
            let depth = rng.gen_range(1..=4);
            for _ in 0..depth {
                let sigma = random_face(&f, &mut rng);
                f = star_subdivision(&f, sigma).unwrap();
            }
            f
        })
        .collect()
}

/// Pure 2- and 3-dimensional fans whose support misses an open region.
pub fn incomplete_fans() -> Vec<Fan> {
    let mk = |dim, rays: Vec<IntVector>, cones: Vec<Vec<usize>>, name: &str| {
        Fan::new(dim, rays, cones, Some(name.to_string())).unwrap()
    };
    vec![
        mk(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0, 1]], "quadrant"),
        mk(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
            "P^2 minus a cone",
        ),
        mk(
            3,
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[-1, -1, -1])],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]],
            "P^3 minus a cone",
        ),
        mk(
            2,
            vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[1, -1])],
            vec![vec![0, 2], vec![1, 2]],
            "F_1 upper half",
        ),
        mk(
            3,
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[0, 0, -1])],
            vec![vec![0, 1, 2], vec![0, 1, 3]],
            "two octants",
        ),
    ]
}
