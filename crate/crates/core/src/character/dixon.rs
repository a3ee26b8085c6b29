//! Burnside–Dixon character tables.
//!
//! The normalised central characters `ω_χ(C_i) = |C_i| χ(g_i) / χ(1)` are the
//! common eigenvectors of the class-multiplication matrices
//! `(M_i)_{jl} = #{(x, y) ∈ C_i × C_j : xy = g_l}`. Working modulo a prime
//! `p ≡ 1 (mod exponent)` every eigenvalue lies in `F_p`, so the eigenspaces
//! can be split exactly with modular linear algebra. Degrees come from the
//! orthogonality relation, and the values are lifted to `Z[ζ_e]` by
//! recovering the eigenvalue multiplicities of `ρ(g)` with a discrete
//! Fourier inversion over the powers of `g`.

use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;

use super::{CharacterError, CharacterTable, ClassFunction, ClassStructure};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2⌈√order⌉`.
pub fn dixon_prime(order: usize, exponent: u32) -> u64 {
    let bound = 2 * ceil_sqrt(order as u64);
    let e = exponent.max(1) as u64;
    let mut p = e + 1;
    while p <= bound || !is_prime(p) {
        p += e;
    }
    p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (1..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Row-reduces in place, dropping zero rows; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}`.
fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - rows[r][f]) % p;
            }
            x
        })
        .collect()
}

/// A subspace of `F_p^k` with a reduced row-echelon basis.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(mut basis: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = rref(&mut basis, p);
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn apply(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

/// Splits an `M`-invariant space into its `M`-eigenspaces.
fn split(space: Space, m: &[Vec<u64>], p: u64) -> Result<Vec<Space>, CharacterError> {
    let d = space.dim();
    let images: Vec<Vec<u64>> = space.basis.iter().map(|v| apply(m, v, p)).collect();
    // M v_r = Σ_s R[r][s] v_s with R[r][s] the pivot-column entries; an
    // eigenvector Σ c_r v_r satisfies Rᵀ c = λ c.
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        let a: Vec<Vec<u64>> = (0..d)
            .map(|s| {
                (0..d)
                    .map(|r| {
                        let x = images[r][space.pivots[s]];
                        if r == s {
                            (x + p - lambda) % p
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = nullspace(&a, p);
        if kernel.is_empty() {
            continue;
        }
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space.basis[0].len()];
                for (coef, b) in c.iter().zip(&space.basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + coef * y) % p;
                    }
                }
                v
            })
            .collect();
        found += vectors.len();
        out.push(Space::new(vectors, p));
        if found == d {
            return Ok(out);
        }
    }
    Err(CharacterError::Dixon(format!(
        "class matrix is not diagonalisable mod {p} on a space of dimension {d}"
    )))
}

fn class_matrix(ctx: &ClassStructure, i: usize, p: u64) -> Vec<Vec<u64>> {
    let k = ctx.class_count();
    let group = ctx.group();
    let mut m = vec![vec![0u64; k]; k];
    for l in 0..k {
        let z = ctx.representative(l);
        for &x in ctx.classes().class(i) {
            let y = group.mul(group.inv(x), z);
            m[ctx.class_of(y)][l] += 1;
        }
    }
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    m
}

/// The full irreducible character table, canonically ordered.
pub fn dixon_table(ctx: &Arc<ClassStructure>) -> Result<CharacterTable, CharacterError> {
    let k = ctx.class_count();
    let order = ctx.order() as u64;
    let e = ctx.exponent();
    let p = dixon_prime(ctx.order(), e);

    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![Space::new(identity, p)];
    let mut rounds = 0;
    for i in 1..k {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        rounds += 1;
        if rounds > k {
            return Err(CharacterError::Dixon("iteration cap exceeded".into()));
        }
        let m = class_matrix(ctx, i, p);
        let mut next = Vec::with_capacity(k);
        for space in spaces {
            if space.dim() == 1 {
                next.push(space);
            } else {
                next.extend(split(space, &m, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.dim() != 1) {
        return Err(CharacterError::Dixon("eigenspaces did not separate".into()));
    }

    let sizes: Vec<u64> = (0..k).map(|c| ctx.class_size(c) as u64).collect();
    let zeta = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let zeta_pows: Vec<u64> = (0..e as u64).map(|j| pow_mod(zeta, j, p)).collect();
    let inv_e = inv_mod(e as u64 % p, p);
    let max_degree = (1..=order).take_while(|d| d * d <= order).last().unwrap_or(1);

    let mut rows = Vec::with_capacity(k);
    for space in &spaces {
        let w = &space.basis[0];
        if w[0] == 0 {
            return Err(CharacterError::Dixon(
                "eigenvector vanishes on the identity class".into(),
            ));
        }
        let norm = inv_mod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|x| x * norm % p).collect();
        // Σ_i ω_i ω_{i*} / |C_i| = |G| / χ(1)²
        let s = (0..k).fold(0, |acc, i| {
            (acc + omega[i] * omega[ctx.inverse_class(i)] % p * inv_mod(sizes[i] % p, p)) % p
        });
        if s == 0 {
            return Err(CharacterError::Dixon("degenerate norm for a central character".into()));
        }
        let target = order % p * inv_mod(s, p) % p;
        let degree = (1..=max_degree)
            .find(|d| d * d % p == target && order.is_multiple_of(*d))
            .ok_or_else(|| CharacterError::Dixon("no admissible degree".into()))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|i| omega[i] * (degree % p) % p * inv_mod(sizes[i] % p, p) % p)
            .collect();

        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let mut mult = vec![0i64; e as usize];
            for (kk, slot) in mult.iter_mut().enumerate() {
                let mut acc = 0;
                for j in 0..e as usize {
                    let twist = zeta_pows[(e as usize - (j * kk) % e as usize) % e as usize];
                    acc = (acc + chi_mod[ctx.power_class(c, j as i64)] * twist) % p;
                }
                let m = acc * inv_e % p;
                if m > degree {
                    return Err(CharacterError::Dixon(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                *slot = m as i64;
            }
            values.push(Cyclotomic::from_int_coeffs(e, &mult));
        }
        rows.push(ClassFunction::new(ctx, values)?);
    }
    CharacterTable::canonical(ctx, rows)
}
