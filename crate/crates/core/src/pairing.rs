//! The deformed Cartan matrix of type `A_{n-1}`, the Laurent coefficients of
//! its inverse, and the skew-symmetric pairing `𝒩` on Laurent monomials.
//!
//! `C(z) = (z + z^{-1}) I - A` where `A` is the adjacency matrix of the Dynkin
//! diagram. Writing `z C(z) = I - z A + z^2 I` and inverting as a power series
//! gives `C(z)^{-1} = z · Σ_k D_k z^k` with `D_0 = I`, `D_1 = A` and
//! `D_k = D_{k-1} A - D_{k-2}`, so `c̃_{i,j}(k) = (D_{k-1})_{i,j}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::torus::monomial::{check_rank, check_same_rank, Vertex, YMonomial};

/// Cartan data of type `A_{n-1}` with a lazily grown table of `c̃_{i,j}(k)`.
#[derive(Debug)]
pub struct CartanData {
    rank: usize,
    cartan: Vec<i64>,
    series: RwLock<Vec<Vec<i64>>>,
    table: RwLock<Arc<PairingTable>>,
}

/// Snapshot of `𝒩_{i,j}(k)` for `|k| ≤ kmax`, shared lock-free between readers.
#[derive(Debug)]
pub struct PairingTable {
    dim: usize,
    kmax: i64,
    vals: Vec<i64>,
}

impl PairingTable {
    pub fn kmax(&self) -> i64 {
        self.kmax
    }

    /// `𝒩_{i,j}(k)`; panics if `|k| > kmax` or the indices are out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: i64) -> i64 {
        assert!(k.abs() <= self.kmax, "pairing table too small for k = {k}");
        let width = (2 * self.kmax + 1) as usize;
        self.vals[((i - 1) * self.dim + (j - 1)) * width + (k + self.kmax) as usize]
    }

    /// `𝒩(m, m')` by bilinearity in the exponents.
    pub fn monomials(&self, m: &YMonomial, m2: &YMonomial) -> i64 {
        let mut acc = 0;
        for (v, e) in m.iter() {
            for (w, f) in m2.iter() {
                acc += e * f * self.get(v.i, w.i, v.p - w.p);
            }
        }
        acc
    }
}

fn registry() -> &'static RwLock<HashMap<usize, Arc<CartanData>>> {
    static REG: OnceLock<RwLock<HashMap<usize, Arc<CartanData>>>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

impl CartanData {
    /// Shared Cartan data for rank `n`.
    pub fn for_rank(n: usize) -> Result<Arc<CartanData>> {
        check_rank(n)?;
        if let Some(c) = registry().read().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let mut reg = registry().write().unwrap();
        Ok(reg.entry(n).or_insert_with(|| Arc::new(Self::new(n))).clone())
    }

    fn new(n: usize) -> Self {
        let dim = n - 1;
        let mut cartan = vec![0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                cartan[i * dim + j] = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
            }
        }
        let identity: Vec<i64> = (0..dim * dim)
            .map(|x| i64::from(x / dim == x % dim))
            .collect();
        Self {
            rank: n,
            cartan,
            series: RwLock::new(vec![identity]),
            table: RwLock::new(Arc::new(PairingTable { dim, kmax: -1, vals: vec![] })),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn dim(&self) -> usize {
        self.rank - 1
    }

    /// Cartan integer `c_{i,j} = (α_i, α_j)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[(i - 1) * self.dim() + (j - 1)]
    }

    fn adjacency(&self, i: usize, j: usize) -> i64 {
        i64::from(i.abs_diff(j) == 1)
    }

    /// Makes sure `D_0..=D_upto` are memoised.
    fn grow_series(&self, upto: usize) {
        if self.series.read().unwrap().len() > upto {
            return;
        }
        let dim = self.dim();
        let mut series = self.series.write().unwrap();
        while series.len() <= upto {
            let k = series.len();
            let prev = &series[k - 1];
            let mut next = vec![0; dim * dim];
            for r in 0..dim {
                for c in 0..dim {
                    let mut acc = 0;
                    for l in 0..dim {
                        acc += prev[r * dim + l] * self.adjacency(l + 1, c + 1);
                    }
                    if k >= 2 {
                        acc -= series[k - 2][r * dim + c];
                    }
                    next[r * dim + c] = acc;
                }
            }
            series.push(next);
        }
    }

    /// Coefficient of `z^k` in `C̃_{i,j}(z)`.
    pub fn ctilde(&self, i: usize, j: usize, k: i64) -> i64 {
        if k <= 0 {
            return 0;
        }
        let idx = (k - 1) as usize;
        self.grow_series(idx);
        self.series.read().unwrap()[idx][(i - 1) * self.dim() + (j - 1)]
    }

    /// `𝒩_{i,j}(k) = c̃(k-1) - c̃(k+1) - c̃(-k-1) + c̃(-k+1)`.
    pub fn n_value(&self, i: usize, j: usize, k: i64) -> i64 {
        self.ctilde(i, j, k - 1) - self.ctilde(i, j, k + 1) - self.ctilde(i, j, -k - 1)
            + self.ctilde(i, j, -k + 1)
    }

    /// A table covering at least `|k| ≤ kmax`.
    pub fn pairing_table(&self, kmax: i64) -> Arc<PairingTable> {
        {
            let t = self.table.read().unwrap();
            if t.kmax >= kmax {
                return t.clone();
            }
        }
        let mut t = self.table.write().unwrap();
        if t.kmax >= kmax {
            return t.clone();
        }
        let kmax = kmax.max(2 * t.kmax).max(4 * self.rank as i64);
        let dim = self.dim();
        let mut vals = Vec::with_capacity(dim * dim * (2 * kmax as usize + 1));
        for i in 1..=dim {
            for j in 1..=dim {
                for k in -kmax..=kmax {
                    vals.push(self.n_value(i, j, k));
                }
            }
        }
        *t = Arc::new(PairingTable { dim, kmax, vals });
        t.clone()
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i < 1 || i > n - 1 {
        Err(Error::IndexOutOfRange { i, max: n - 1 })
    } else {
        Ok(())
    }
}

/// `c̃_{i,j}(k)` in rank `n`.
pub fn ctilde(n: usize, i: usize, j: usize, k: i64) -> Result<i64> {
    let data = CartanData::for_rank(n)?;
    check_index(n, i)?;
    check_index(n, j)?;
    Ok(data.ctilde(i, j, k))
}

/// `𝒩(Y_{i,p}, Y_{j,s})`.
pub fn pairing_n(n: usize, a: Vertex, b: Vertex) -> Result<i64> {
    let data = CartanData::for_rank(n)?;
    a.validate(n)?;
    b.validate(n)?;
    Ok(data.n_value(a.i, b.i, a.p - b.p))
}

/// `𝒩(m, m')` extended bilinearly over exponents.
pub fn pairing_monomials(m: &YMonomial, m2: &YMonomial) -> Result<i64> {
    check_same_rank(m.rank(), m2.rank())?;
    let span = match (m.p_range(), m2.p_range()) {
        (Some((a, b)), Some((c, d))) => (b - c).abs().max((a - d).abs()),
        _ => return Ok(0),
    };
    let table = CartanData::for_rank(m.rank())?.pairing_table(span);
    Ok(table.monomials(m, m2))
}

/// Closed form of `𝒩_{i,j}(k)` for increasing height functions, valid for `k ≥ δ_{i,j}`:
/// `δ(k ≡ i+j) - δ(k ≡ i-j) - δ(k ≡ -i+j) + δ(k ≡ -i-j)` modulo `2n`.
pub fn pairing_n_closed(n: usize, i: usize, j: usize, k: i64) -> Result<i64> {
    check_rank(n)?;
    check_index(n, i)?;
    check_index(n, j)?;
    if k < i64::from(i == j) {
        return Err(Error::Precondition(format!(
            "closed formula needs k >= delta_(i,j), got k = {k} for (i,j) = ({i},{j})"
        )));
    }
    let m = 2 * n as i64;
    let hit = |r: i64| i64::from((k - r).rem_euclid(m) == 0);
    let (i, j) = (i as i64, j as i64);
    Ok(hit(i + j) - hit(i - j) - hit(j - i) + hit(-i - j))
}
