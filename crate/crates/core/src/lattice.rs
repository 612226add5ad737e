//! Integer lattices: Hermite bases of lattices between `2^K Z^c` and `Z^c`,
//! Smith diagonals, and solution lattices of linear congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A lattice `2^K Z^c <= L <= Z^c` in lower-triangular Hermite form.
///
/// Row `n` has its last non-zero entry at index `n` (it is a polynomial of
/// degree `n` when coordinates are coefficients), a positive diagonal
/// dividing `2^K`, and entries left of the diagonal reduced into
/// `[0, diagonal of that column)` once [`canonicalize`](Self::canonicalize)
/// has run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    exponent: u32,
    rows: Vec<Vec<i128>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

impl HermiteBasis {
    /// The lattice `2^K Z^c`.
    pub fn new(rank: usize, exponent: u32) -> Self {
        assert!(exponent <= 60, "modulus exponent too large");
        let m = 1i128 << exponent;
        let rows = (0..rank)
            .map(|n| {
                let mut r = vec![0i128; rank];
                r[n] = m;
                r
            })
            .collect();
        HermiteBasis { exponent, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn modulus(&self) -> i128 {
        1i128 << self.exponent
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rank()).map(|n| self.rows[n][n]).collect()
    }

    /// `log2 [Z^c : L]`.
    pub fn index_exponent(&self) -> u32 {
        self.diagonal().iter().map(|d| d.trailing_zeros()).sum()
    }

    /// `log2 [L : 2^K Z^c]`.
    pub fn order_exponent(&self) -> u32 {
        self.exponent * self.rank() as u32 - self.index_exponent()
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, v: &[i128]) {
        let m = self.modulus();
        let mut v: Vec<i128> = v.iter().map(|x| x.rem_euclid(m)).collect();
        for n in (0..self.rank()).rev() {
            if v[n] == 0 {
                continue;
            }
            let h = self.rows[n][n];
            if v[n] % h == 0 {
                let q = v[n] / h;
                for j in 0..=n {
                    v[j] = (v[j] - q * self.rows[n][j]).rem_euclid(m);
                }
                continue;
            }
            let (g, s, t) = ext_gcd(h, v[n]);
            let (hv, vv) = (h / g, v[n] / g);
            let row = &self.rows[n];
            let new_row: Vec<i128> = (0..=n)
                .map(|j| (s * row[j] + t * v[j]).rem_euclid(m))
                .collect();
            let new_v: Vec<i128> = (0..=n)
                .map(|j| (vv * row[j] - hv * v[j]).rem_euclid(m))
                .collect();
            let mut full = new_row;
            full[n] = g;
            full.resize(self.rank(), 0);
            self.rows[n] = full;
            v = new_v;
            v.resize(self.rank(), 0);
            v[n] = 0;
        }
    }

    /// Reduces every entry left of a diagonal modulo that column's diagonal.
    pub fn canonicalize(&mut self) {
        for n in 0..self.rank() {
            for j in (0..n).rev() {
                let h = self.rows[j][j];
                let q = self.rows[n][j].div_euclid(h);
                if q != 0 {
                    let src = self.rows[j].clone();
                    for (x, y) in self.rows[n].iter_mut().zip(&src).take(j + 1) {
                        *x -= q * y;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let m = self.modulus();
        let mut v: Vec<i128> = v.iter().map(|x| x.rem_euclid(m)).collect();
        for n in (0..self.rank()).rev() {
            let h = self.rows[n][n];
            if v[n] % h != 0 {
                return false;
            }
            let q = v[n] / h;
            for j in 0..=n {
                v[j] = (v[j] - q * self.rows[n][j]).rem_euclid(m);
            }
        }
        true
    }

    /// Canonical basis of the lattice generated by `2^K Z^c` and `gens`.
    pub fn from_generators(rank: usize, exponent: u32, gens: &[Vec<i128>]) -> Self {
        let mut h = Self::new(rank, exponent);
        for g in gens {
            h.insert(g);
        }
        h.canonicalize();
        h
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Diagonal of the Smith normal form (non-zero invariant factors, each
/// dividing the next) of an integer matrix.
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Pivot: smallest non-zero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| m[i][j].abs().cmp(&m[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let src = m[t].clone();
                for (x, y) in m[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !m[t][j].is_zero() {
                    swap_cols(&mut m, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let src = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(&src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

/// Basis (as columns, returned as a list of vectors) of
/// `{ a in Z^c : sum_j rows[i][j] a_j = 0 mod modulus for every i }`.
///
/// Processes one congruence at a time, keeping a basis of the current
/// solution lattice and applying unimodular column operations so that the
/// congruence only involves the first basis vector.
pub fn kernel_of_congruences(rows: &[Vec<BigInt>], rank: usize, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = (0..rank)
        .map(|i| {
            let mut v = vec![BigInt::zero(); rank];
            v[i] = BigInt::one();
            v
        })
        .collect();
    for row in rows {
        let mut vals: Vec<BigInt> = basis
            .iter()
            .map(|b| b.iter().zip(row).map(|(x, y)| x * y).sum::<BigInt>().mod_floor(modulus))
            .collect();
        // Euclid on the values, mirrored on the basis vectors, until only
        // vals[0] is non-zero.
        loop {
            let nz: Vec<usize> = (0..rank).filter(|&i| !vals[i].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    vals.swap(0, i);
                    basis.swap(0, i);
                }
                break;
            }
            let p = *nz.iter().min_by(|&&a, &&b| vals[a].cmp(&vals[b])).unwrap();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = vals[i].div_floor(&vals[p]);
                let src = basis[p].clone();
                for (x, y) in basis[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                vals[i] = vals[i].mod_floor(&vals[p]);
            }
        }
        if rank > 0 && !vals[0].is_zero() {
            let g = vals[0].gcd(modulus);
            let scale = modulus / g;
            for x in basis[0].iter_mut() {
                *x *= &scale;
            }
        }
    }
    basis
}

/// Converts a full-rank basis into the lower-triangular Hermite form of
/// [`HermiteBasis`], given that the lattice contains `2^exponent Z^c`.
pub fn hermite_from_basis(basis: &[Vec<BigInt>], exponent: u32) -> HermiteBasis {
    let rank = basis.first().map_or(0, Vec::len);
    let m = BigInt::one() << exponent as usize;
    let gens: Vec<Vec<i128>> = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| i128::try_from(x.mod_floor(&m)).expect("reduced entry fits"))
                .collect()
        })
        .collect();
    HermiteBasis::from_generators(rank, exponent, &gens)
}
