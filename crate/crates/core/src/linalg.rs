//! Dense matrices over a coefficient ring and exact elimination over the
//! Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::scalar::{Coeff, Qi};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Mat<C> {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    /// Builds from rows; all rows must have equal length.
    ///
    /// # Panics
    /// Panics on ragged input.
    #[must_use]
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[must_use]
    pub fn row(&self, i: usize) -> Vec<C> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    #[must_use]
    pub fn col(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    #[must_use]
    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    #[must_use]
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    #[must_use]
    pub fn conj(&self) -> Self {
        self.map(C::conj)
    }

    #[must_use]
    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].plus(&o[(i, j)]))
    }

    #[must_use]
    pub fn minus(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].minus(&o[(i, j)]))
    }

    #[must_use]
    pub fn negate(&self) -> Self {
        self.map(C::negate)
    }

    #[must_use]
    pub fn scale(&self, c: &Qi) -> Self {
        self.map(|x| x.scale(c))
    }

    #[must_use]
    pub fn times(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        out
    }

    #[must_use]
    pub fn apply(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(C::is_zero)
    }

    #[must_use]
    pub fn trace(&self) -> C {
        let mut t = C::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.plus(&self[(i, i)]);
        }
        t
    }

    /// Submatrix `[r0, r0+nr) × [c0, c0+nc)`.
    #[must_use]
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Assembles `[[a, b], [c, d]]`.
    #[must_use]
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (r1, c1) = (a.rows, a.cols);
        Self::from_fn(r1 + c.rows, c1 + b.cols, |i, j| match (i < r1, j < c1) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - c1)].clone(),
            (false, true) => c[(i - r1, j)].clone(),
            (false, false) => d[(i - r1, j - c1)].clone(),
        })
    }

    #[must_use]
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == self[(j, i)].negate()))
    }
}

impl<C> std::ops::Index<(usize, usize)> for Mat<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for Mat<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: Coeff> fmt::Display for Mat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat<Poly> {
    /// Evaluates every entry at a point.
    #[must_use]
    pub fn eval(&self, point: &[Qi]) -> Mat<Qi> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.eval(point)).collect(),
        }
    }

    /// The constant matrix, if every entry is constant.
    #[must_use]
    pub fn as_constant(&self) -> Option<Mat<Qi>> {
        let data: Option<Vec<Qi>> = self.data.iter().map(Poly::as_constant).collect();
        data.map(|data| Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Determinant by expansion over column subsets.
    #[must_use]
    pub fn det_poly(&self) -> Poly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        det_subsets(self)
    }
}

impl Mat<Qi> {
    #[must_use]
    pub fn lift(&self) -> Mat<Poly> {
        self.map(|c| Poly::constant(c.clone()))
    }

    /// Reduced row echelon form and pivot columns.
    #[must_use]
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`.
    #[must_use]
    pub fn kernel(&self) -> Vec<Vec<Qi>> {
        if self.rows > self.cols {
            if let Some(rows) = modp::independent_rows(self) {
                let sub = Mat::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone());
                let k = sub.kernel();
                if modp::annihilates(self, &k) {
                    return k;
                }
            }
        }
        self.dense_kernel()
    }

    fn dense_kernel(&self) -> Vec<Vec<Qi>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Qi::zero(); self.cols];
                v[f] = Qi::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    #[must_use]
    pub fn det(&self) -> Qi {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Qi::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Qi::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                }
            }
        }
        det
    }

    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Qi::one()
            } else {
                Qi::zero()
            }
        });
        let (r, pivots) = aug.rref();
        (pivots.len() >= n && pivots[..n].iter().enumerate().all(|(i, &p)| p == i))
            .then(|| r.block(0, n, n, n))
    }

    /// Some solution of `self·x = b`, free variables set to zero.
    #[must_use]
    pub fn solve(&self, b: &[Qi]) -> Option<Vec<Qi>> {
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Qi::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    #[must_use]
    pub fn is_real(&self) -> bool {
        self.data.iter().all(Qi::is_real)
    }
}

/// Rank of a list of vectors.
#[must_use]
pub fn rank_of(vectors: &[Vec<Qi>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors.to_vec()).rank()
}

/// Row-reduced basis of the span of `vectors`.
#[must_use]
pub fn span_basis(vectors: &[Vec<Qi>]) -> Vec<Vec<Qi>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, p) = Mat::from_rows(vectors.to_vec()).rref();
    (0..p.len()).map(|i| r.row(i)).collect()
}

/// Whether two families span the same subspace.
#[must_use]
pub fn same_span(a: &[Vec<Qi>], b: &[Vec<Qi>]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    let joint: Vec<Vec<Qi>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of(&joint) == ra
}

/// Whether `v` lies in the span of `basis`.
#[must_use]
pub fn in_span(basis: &[Vec<Qi>], v: &[Qi]) -> bool {
    let mut joint = basis.to_vec();
    joint.push(v.to_vec());
    rank_of(&joint) == rank_of(basis)
}

fn det_subsets<C: Coeff>(m: &Mat<C>) -> C {
    let n = m.rows();
    if n == 0 {
        return C::one();
    }
    let mut dp: BTreeMap<u32, C> = BTreeMap::new();
    dp.insert(0, C::one());
    for r in 0..n {
        let mut next: BTreeMap<u32, C> = BTreeMap::new();
        for (mask, val) in &dp {
            for c in 0..n {
                if mask & (1 << c) != 0 || m[(r, c)].is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut t = val.times(&m[(r, c)]);
                if above % 2 == 1 {
                    t = t.negate();
                }
                let e = next.entry(mask | (1 << c)).or_insert_with(C::zero);
                *e = e.plus(&t);
            }
        }
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(C::zero)
}

/// Result of a sparse exact solve.
#[derive(Clone, Debug, PartialEq)]
pub enum SparseSolution {
    /// A solution with all free variables zero.
    Solved(Vec<Qi>),
    /// The system is inconsistent; `row` is the first equation whose
    /// reduction left `0 = residual` with a nonzero residual.
    Inconsistent { row: usize, residual: Qi },
}

/// Sparse linear system `Σ_j a_ij x_j = b_i` over the Gaussian rationals.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    unknowns: usize,
    rows: Vec<(BTreeMap<usize, Qi>, Qi)>,
}

impl SparseSystem {
    #[must_use]
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: BTreeMap<usize, Qi>, rhs: Qi) {
        self.rows.push((row, rhs));
    }

    #[must_use]
    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn solve(&self) -> SparseSolution {
        let mut pivots: BTreeMap<usize, (BTreeMap<usize, Qi>, Qi)> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        for (idx, (row, rhs)) in self.rows.iter().enumerate() {
            let mut row = row.clone();
            row.retain(|_, v| !v.is_zero());
            let mut rhs = rhs.clone();
            loop {
                let hit = row.keys().find(|k| pivots.contains_key(k)).copied();
                let Some(c) = hit else { break };
                let f = row.remove(&c).expect("present");
                let (prow, prhs) = &pivots[&c];
                for (k, v) in prow {
                    if *k == c {
                        continue;
                    }
                    let e = row.entry(*k).or_default();
                    *e = &*e - &(&f * v);
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                rhs = &rhs - &(&f * prhs);
            }
            match row.keys().next().copied() {
                None => {
                    if !rhs.is_zero() {
                        return SparseSolution::Inconsistent {
                            row: idx,
                            residual: rhs,
                        };
                    }
                }
                Some(p) => {
                    let inv = row[&p].inv().expect("nonzero");
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    rhs = &rhs * &inv;
                    pivots.insert(p, (row, rhs));
                    order.push(p);
                }
            }
        }
        let mut x = vec![Qi::zero(); self.unknowns];
        for &p in order.iter().rev() {
            let (row, rhs) = &pivots[&p];
            let mut v = rhs.clone();
            for (k, a) in row {
                if *k != p {
                    v = &v - &(a * &x[*k]);
                }
            }
            x[p] = v;
        }
        SparseSolution::Solved(x)
    }
}

/// Elimination modulo a prime `p = 1 mod 4`, with `i` sent to a square root of -1.
mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, ToPrimitive, Zero};

    use super::Mat;
    use crate::scalar::{Qi, Q};

    pub(super) const P: u64 = 2_305_843_009_213_693_973;
    const SQRT_MINUS_ONE: u64 = 1_035_093_963_448_091_331;

    fn mul(a: u64, b: u64) -> u64 {
        (u128::from(a) * u128::from(b) % u128::from(P)) as u64
    }

    fn add(a: u64, b: u64) -> u64 {
        (a + b) % P
    }

    fn sub(a: u64, b: u64) -> u64 {
        (a + P - b) % P
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn int(n: &BigInt) -> u64 {
        let r = n % BigInt::from(P);
        let r = if r.sign() == num_bigint::Sign::Minus {
            r + BigInt::from(P)
        } else {
            r
        };
        r.to_u64().expect("reduced residue")
    }

    fn rational(q: &Q) -> Option<u64> {
        let d = int(q.denom());
        (d != 0).then(|| mul(int(q.numer()), inv(d)))
    }

    fn reduce(c: &Qi) -> Option<u64> {
        Some(add(rational(&c.re)?, mul(rational(&c.im)?, SQRT_MINUS_ONE)))
    }

    /// Rows independent modulo `P`, found greedily; `None` if a denominator vanishes.
    pub(super) fn independent_rows(a: &Mat<Qi>) -> Option<Vec<usize>> {
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        for i in 0..a.rows {
            let mut row: Vec<u64> = (0..a.cols)
                .map(|j| reduce(&a[(i, j)]))
                .collect::<Option<_>>()?;
            for (c, b) in &basis {
                let f = row[*c];
                if f != 0 {
                    for (x, y) in row.iter_mut().zip(b) {
                        *x = sub(*x, mul(f, *y));
                    }
                }
            }
            if let Some(c) = row.iter().position(|&x| x != 0) {
                let s = inv(row[c]);
                row.iter_mut().for_each(|x| *x = mul(*x, s));
                basis.push((c, row));
                chosen.push(i);
                if chosen.len() == a.cols {
                    break;
                }
            }
        }
        Some(chosen)
    }

    /// Entries scaled by the lcm of their denominators, as Gaussian integers.
    fn integral<'a>(v: impl Iterator<Item = &'a Qi> + Clone) -> Vec<(BigInt, BigInt)> {
        let l = v
            .clone()
            .flat_map(|c| [c.re.denom(), c.im.denom()])
            .fold(BigInt::one(), |l, d| l.lcm(d));
        let scale = |q: &Q| q.numer() * (&l / q.denom());
        v.map(|c| (scale(&c.re), scale(&c.im))).collect()
    }

    /// Exact test that every row of `a` is orthogonal to every vector of `k`.
    pub(super) fn annihilates(a: &Mat<Qi>, k: &[Vec<Qi>]) -> bool {
        let vs: Vec<Vec<(BigInt, BigInt)>> = k.iter().map(|v| integral(v.iter())).collect();
        (0..a.rows).all(|i| {
            let row = integral((0..a.cols).map(|j| &a.data[i * a.cols + j]));
            vs.iter().all(|v| {
                let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
                for ((a, b), (c, d)) in row.iter().zip(v) {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    re += a * c - b * d;
                    im += a * d + b * c;
                }
                re.is_zero() && im.is_zero()
            })
        })
    }
}
