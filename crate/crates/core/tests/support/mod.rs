//! Test-only oracles and random instance generators.
//!
//! Shared with the CLI acceptance suite through `#[path]`. Nothing here calls
//! into the library routines it is used to check: vertices are found by
//! solving every n-subset of facets with Cramer's rule, and isotropy orders by
//! scanning residues.

#![allow(dead_code)]

use gromov_core::rational::{int, Rational};
use gromov_core::{DelzantPolytope, HalfSpace, LatticeVector};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec()).unwrap()
}

pub fn poly(dim: usize, facets: &[(Vec<i64>, Rational)]) -> DelzantPolytope {
    DelzantPolytope::new(
        dim,
        facets
            .iter()
            .map(|(n, o)| HalfSpace::new(lv(n), o.clone()))
            .collect(),
    )
    .unwrap()
}

pub fn reflexive(dim: usize, normals: &[&[i64]]) -> DelzantPolytope {
    let f: Vec<(Vec<i64>, Rational)> = normals.iter().map(|n| (n.to_vec(), int(-1))).collect();
    poly(dim, &f)
}

pub fn fig1() -> DelzantPolytope {
    poly(
        2,
        &[
            (vec![0, 1], int(0)),
            (vec![-1, -1], int(-3)),
            (vec![1, 0], int(0)),
            (vec![1, 1], int(1)),
        ],
    )
}

pub fn p2_simplex() -> DelzantPolytope {
    poly(
        2,
        &[
            (vec![1, 0], int(0)),
            (vec![0, 1], int(0)),
            (vec![-1, -1], int(-3)),
        ],
    )
}

/// The five smooth reflexive polygons: P2, P1xP1 and the blow-ups of P2 at
/// one, two and three points.
pub fn smooth_fano_polygons() -> Vec<(&'static str, DelzantPolytope)> {
    vec![
        ("P2", reflexive(2, &[&[1, 0], &[0, 1], &[-1, -1]])),
        (
            "P1xP1",
            reflexive(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]),
        ),
        ("Bl1", reflexive(2, &[&[0, 1], &[-1, -1], &[1, 0], &[1, 1]])),
        (
            "Bl2",
            reflexive(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1]]),
        ),
        (
            "Bl3",
            reflexive(
                2,
                &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
            ),
        ),
    ]
}

// ---------------------------------------------------------------------------
// exact helpers, independent of the library's linear algebra

fn det_q(m: &[Vec<Rational>]) -> Rational {
    // Laplace expansion along the first row; matrices here are at most 4x4.
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_q(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn det_i(m: &[Vec<i64>]) -> i64 {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    gromov_core::rational::to_i64(&det_q(&q)).unwrap()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// All vertices by intersecting every n-subset of facets (Cramer's rule) and
/// keeping the feasible points. Sorted and deduplicated.
pub fn exhaustive_vertices(p: &DelzantPolytope) -> Vec<Vec<Rational>> {
    let n = p.dim();
    let facets = p.facets();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for s in subsets(facets.len(), n) {
        let a: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| facets[i].normal.coords().iter().map(|&c| int(c)).collect())
            .collect();
        let d = det_q(&a);
        if d.is_zero() {
            continue;
        }
        let x: Vec<Rational> = (0..n)
            .map(|j| {
                let mut aj = a.clone();
                for (r, &i) in s.iter().enumerate() {
                    aj[r][j] = facets[i].offset.clone();
                }
                det_q(&aj) / &d
            })
            .collect();
        let feasible = facets.iter().all(|f| {
            let v: Rational = f
                .normal
                .coords()
                .iter()
                .zip(&x)
                .map(|(&c, xi)| xi * int(c))
                .sum();
            v >= f.offset
        });
        if feasible {
            out.push(x);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Isotropy order of the `xi`-subcircle over the stratum with stabilizer
/// lattice spanned by `normals`, found by scanning: the largest `g` with
/// `xi = sum c_i n_i (mod g)` for some integers `c_i`. Returns 0 when `xi`
/// lies in the rational span of the normals.
pub fn brute_force_quotient_order(xi: &[i64], normals: &[Vec<i64>]) -> u64 {
    let n = xi.len();
    let k = normals.len();
    // (k+1)-minors of [normals | xi]: all vanish iff xi is in the span, and
    // any nonzero one bounds the order.
    let mut cols: Vec<Vec<i64>> = normals.to_vec();
    cols.push(xi.to_vec());
    let mut bound: Option<i64> = None;
    for rows in subsets(n, k + 1) {
        let m: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let d = det_i(&m).abs();
        if d != 0 {
            bound = Some(bound.map_or(d, |b: i64| b.min(d)));
        }
    }
    let Some(bound) = bound else {
        return 0;
    };
    for g in (1..=bound).rev() {
        let mut c = vec![0i64; k];
        loop {
            let ok = (0..n).all(|r| {
                let v: i64 = xi[r] - (0..k).map(|i| c[i] * normals[i][r]).sum::<i64>();
                v.rem_euclid(g) == 0
            });
            if ok {
                return g as u64;
            }
            // odometer over [0, g)^k
            let mut i = 0;
            while i < k {
                c[i] += 1;
                if c[i] < g {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    unreachable!("g = 1 always works")
}

// ---------------------------------------------------------------------------
// random instances

/// A random unimodular matrix and its inverse, as products of elementary
/// row operations with small multipliers.
pub fn random_unimodular<R: Rng>(
    rng: &mut R,
    n: usize,
    steps: usize,
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect();
    let mut inv = m.clone();
    for _ in 0..steps {
        if n == 1 {
            if rng.gen_bool(0.5) {
                m[0][0] = -m[0][0];
                inv[0][0] = -inv[0][0];
            }
            continue;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                // row_i += q row_j ; inverse: col_j -= q col_i
                let q = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row_j = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(row_j) {
                    *x += q * y;
                }
                for row in inv.iter_mut() {
                    row[j] -= q * row[i];
                }
            }
            1 => {
                m.swap(i, j);
                for row in inv.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
                for row in inv.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    (m, inv)
}

/// Image of `p` under `x -> M x + t`, with `M_inv` the inverse of `M`.
pub fn transform(p: &DelzantPolytope, m_inv: &[Vec<i64>], t: &[Rational]) -> DelzantPolytope {
    let n = p.dim();
    let facets = p
        .facets()
        .iter()
        .map(|f| {
            // n' = M^{-T} n
            let normal: Vec<i64> = (0..n)
                .map(|c| (0..n).map(|r| m_inv[r][c] * f.normal.coords()[r]).sum())
                .collect();
            let shift: Rational = normal.iter().zip(t).map(|(&a, b)| b * int(a)).sum();
            HalfSpace::new(lv(&normal), &f.offset + shift)
        })
        .collect();
    DelzantPolytope::new(n, facets).unwrap()
}

pub fn product(a: &DelzantPolytope, b: &DelzantPolytope) -> DelzantPolytope {
    let (da, db) = (a.dim(), b.dim());
    let mut facets = Vec::new();
    for f in a.facets() {
        let mut n = f.normal.coords().to_vec();
        n.extend(std::iter::repeat_n(0, db));
        facets.push(HalfSpace::new(lv(&n), f.offset.clone()));
    }
    for f in b.facets() {
        let mut n = vec![0; da];
        n.extend_from_slice(f.normal.coords());
        facets.push(HalfSpace::new(lv(&n), f.offset.clone()));
    }
    DelzantPolytope::new(da + db, facets).unwrap()
}

fn random_offset<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(
        rng.gen_range(-6i64..=6).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

fn random_segment<R: Rng>(rng: &mut R) -> DelzantPolytope {
    let a = random_offset(rng);
    let len = Rational::new(
        rng.gen_range(1i64..=9).into(),
        rng.gen_range(1i64..=2).into(),
    );
    poly(1, &[(vec![1], a.clone()), (vec![-1], -(a + len))])
}

/// A Delzant polygon with random (possibly non-monotone) edge lengths.
fn random_delzant_polygon<R: Rng>(rng: &mut R) -> DelzantPolytope {
    let a = rng.gen_range(1i64..=6);
    let b = rng.gen_range(1i64..=6);
    match rng.gen_range(0..4) {
        // triangle of size a
        0 => poly(
            2,
            &[
                (vec![1, 0], int(0)),
                (vec![0, 1], int(0)),
                (vec![-1, -1], int(-a)),
            ],
        ),
        // rectangle a x b
        1 => poly(
            2,
            &[
                (vec![1, 0], int(0)),
                (vec![-1, 0], int(-a)),
                (vec![0, 1], int(0)),
                (vec![0, -1], int(-b)),
            ],
        ),
        // Hirzebruch trapezoid
        2 => {
            let h = rng.gen_range(0i64..=2);
            poly(
                2,
                &[
                    (vec![1, 0], int(0)),
                    (vec![0, 1], int(0)),
                    (vec![0, -1], int(-b)),
                    (vec![-1, -h], int(-(a + h * b))),
                ],
            )
        }
        // triangle with 1..=3 corners cut
        _ => {
            let size = rng.gen_range(4i64..=9);
            let mut facets = vec![
                (vec![1, 0], int(0)),
                (vec![0, 1], int(0)),
                (vec![-1, -1], int(-size)),
            ];
            let cuts = [(vec![1, 1], 1i64), (vec![-1, 0], 0), (vec![0, -1], 0)];
            let k = rng.gen_range(1..=3);
            for (normal, kind) in cuts.iter().take(k) {
                let c = rng.gen_range(1..size / 2);
                let offset = match kind {
                    1 => int(c),
                    _ => int(c - size),
                };
                facets.push((normal.clone(), offset));
            }
            poly(2, &facets)
        }
    }
}

/// Random Delzant polytope in dimension 1, 2 or 3 with at most 8 facets,
/// moved by a random lattice automorphism and rational translation.
pub fn random_delzant<R: Rng>(rng: &mut R) -> DelzantPolytope {
    let base = match rng.gen_range(0..5) {
        0 => random_segment(rng),
        1 | 2 => random_delzant_polygon(rng),
        3 => product(&random_delzant_polygon(rng), &random_segment(rng)),
        _ => {
            let s = rng.gen_range(1i64..=5);
            poly(
                3,
                &[
                    (vec![1, 0, 0], int(0)),
                    (vec![0, 1, 0], int(0)),
                    (vec![0, 0, 1], int(0)),
                    (vec![-1, -1, -1], int(-s)),
                ],
            )
        }
    };
    let n = base.dim();
    let (_, inv) = random_unimodular(rng, n, 6);
    let t: Vec<Rational> = (0..n).map(|_| random_offset(rng)).collect();
    transform(&base, &inv, &t)
}

/// A smooth reflexive polygon moved by a random lattice automorphism and
/// translation, so that it is monotone but not in reflexive position.
pub fn random_monotone_polygon<R: Rng>(rng: &mut R) -> DelzantPolytope {
    let (_, base) = smooth_fano_polygons().choose(rng).cloned().unwrap();
    let (_, inv) = random_unimodular(rng, 2, 8);
    let t: Vec<Rational> = (0..2)
        .map(|_| {
            Rational::new(
                rng.gen_range(-7i64..=7).into(),
                rng.gen_range(1i64..=2).into(),
            )
        })
        .collect();
    transform(&base, &inv, &t)
}

/// Random small instance for the isotropy oracle: `k` columns of a random
/// unimodular matrix and a nonzero `xi` with entries in [-5, 5].
pub fn random_quotient_instance<R: Rng>(rng: &mut R) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(0..=n);
    let (m, _) = random_unimodular(rng, n, 5);
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    let normals: Vec<Vec<i64>> = cols[..k]
        .iter()
        .map(|&c| (0..n).map(|r| m[r][c]).collect())
        .collect();
    let xi = loop {
        let xi: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if xi.iter().any(|&x| x != 0) {
            break xi;
        }
    };
    (xi, normals)
}

/// All primitive integer vectors in dimension `dim` with entries in [-r, r].
pub fn primitive_directions(dim: usize, r: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        let v = lv(&cur);
        if v.is_primitive() {
            out.push(v);
        }
        let mut i = 0;
        while i < dim {
            cur[i] += 1;
            if cur[i] <= r {
                break;
            }
            cur[i] = -r;
            i += 1;
        }
        if i == dim {
            return out;
        }
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
