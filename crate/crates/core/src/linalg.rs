//! Exact dense linear algebra over a [`Field`], plus fraction-free
//! (Bareiss) elimination over an [`IntegralDomain`].

use std::fmt;

use crate::field::Field;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_elem(rows: usize, cols: usize, e: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![e; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows)
            .map(|i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(cols.len(), rows)
    }
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::from_elem(rows, cols, field.zero())
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(field, n, n);
    for i in 0..n {
        m.set(i, i, field.one());
    }
    m
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut c = zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = field.mul_add(c.get(i, j), x, b.get(k, j));
                c.set(i, j, v);
            }
        }
    }
    c
}

/// `v * M` for a row vector `v`.
pub fn vec_mat<F: Field>(field: &F, v: &[F::Elem], m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.rows);
    let mut out = vec![field.zero(); m.cols];
    for (i, x) in v.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = field.mul_add(o, x, m.get(i, j));
        }
    }
    out
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.cols);
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| field.mul_add(&acc, a, b))
        })
        .collect()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.mul_add(&acc, x, y))
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot
/// column of each nonzero row. Zero rows end up at the bottom.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let neg = field.neg(&factor);
            for j in c..m.cols {
                let v = field.mul_add(m.get(i, j), &neg, m.get(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // eliminate on the shorter side
    let mut work = if m.rows > m.cols { m.transpose() } else { m.clone() };
    row_echelon_rank(field, &mut work)
}

/// Forward elimination only.
fn row_echelon_rank<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> usize {
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
        for i in r + 1..m.rows {
            let factor = m.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let f = field.neg(&field.mul(&factor, &inv));
            for j in c..m.cols {
                let v = field.mul_add(m.get(i, j), &f, m.get(r, j));
                m.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

pub fn rank_of_rows<F: Field>(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    rank(field, &Matrix::from_rows(cols, rows.to_vec()))
}

/// Basis of the right kernel `{x : M x = 0}`. One vector per free column,
/// in increasing column order, with a 1 in that free column.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![None; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..m.cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(work.get(r, free));
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<E> {
    Unique(Vec<E>),
    /// `particular + span(kernel)`.
    Affine {
        particular: Vec<E>,
        kernel: Vec<Vec<E>>,
    },
    Inconsistent,
}

impl<E> Solution<E> {
    pub fn particular(&self) -> Option<&[E]> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Affine { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

/// Solves `M x = rhs`.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, rhs: &[F::Elem]) -> Solution<F::Elem> {
    assert_eq!(rhs.len(), m.rows);
    let mut aug = zeros(field, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, rhs[i].clone());
    }
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![field.zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, m.cols).clone();
    }
    let ker = kernel(field, m);
    if ker.is_empty() {
        Solution::Unique(x)
    } else {
        Solution::Affine {
            particular: x,
            kernel: ker,
        }
    }
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(a.get(i, c))) else {
            return field.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = field.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = field.mul(&det, &piv);
        let inv = field.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = a.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let f = field.neg(&field.mul(&factor, &inv));
            for j in c..n {
                let v = field.mul_add(a.get(i, j), &f, a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Incrementally maintained row space, for greedy basis selection and
/// membership/coordinate queries.
#[derive(Clone, Debug)]
pub struct RowSpace<E> {
    cols: usize,
    /// Reduced rows: `rows[k]` has a 1 at `pivots[k]` and zeros at every
    /// other pivot column.
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + fmt::Debug> RowSpace<E> {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Residue of `v` after reduction by the current rows.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            let neg = field.neg(&c);
            for (x, y) in v.iter_mut().zip(row) {
                if !field.is_zero(y) {
                    *x = field.mul_add(x, &neg, y);
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        is_zero_vec(field, &self.reduce(field, v))
    }

    /// Adds `v`; returns false (and leaves the space unchanged) when `v`
    /// already lies in it.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        let r = self.reduce(field, v);
        let Some(p) = r.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&r[p]).expect("nonzero pivot");
        let r: Vec<E> = r.iter().map(|x| field.mul(x, &inv)).collect();
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            let neg = field.neg(&c);
            for (x, y) in row.iter_mut().zip(&r) {
                *x = field.mul_add(x, &neg, y);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

/// Commutative ring without zero divisors, with exact division.
pub trait IntegralDomain {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

/// The integers, as an [`IntegralDomain`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl IntegralDomain for Integers {
    type Elem = num_bigint::BigInt;
    fn zero(&self) -> Self::Elem {
        0.into()
    }
    fn one(&self) -> Self::Elem {
        1.into()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        num_traits::Zero::is_zero(a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        use num_integer::Integer;
        if num_traits::Zero::is_zero(b) {
            return None;
        }
        let (q, r) = a.div_rem(b);
        num_traits::Zero::is_zero(&r).then_some(q)
    }
}

/// Result of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct BareissEchelon<E> {
    /// Row echelon form; row `k` has its leading entry at `pivots[k]`.
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    /// Determinant of the selected row/pivot-column minor, up to sign.
    pub last_pivot: E,
}

/// Bareiss fraction-free forward elimination. Every intermediate entry is a
/// minor of the input, so entries stay polynomially bounded.
pub fn bareiss<R: IntegralDomain>(ring: &R, rows: &[Vec<R::Elem>], cols: usize) -> BareissEchelon<R::Elem> {
    let mut a: Vec<Vec<R::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut prev = ring.one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..a.len() {
            let lead = a[i][c].clone();
            for j in c..cols {
                let t = ring.sub(&ring.mul(&piv, &a[i][j]), &ring.mul(&lead, &a[r][j]));
                a[i][j] = ring.exact_div(&t, &prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    BareissEchelon {
        rows: a,
        pivots,
        last_pivot: prev,
    }
}

/// Determinant by fraction-free elimination.
pub fn bareiss_determinant<R: IntegralDomain>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !ring.is_zero(&a[i][k])) else {
            return ring.zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ring.sub(&ring.mul(&a[k][k], &a[i][j]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring.exact_div(&t, &prev).expect("Bareiss division is exact");
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return ring.one();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        ring.sub(&ring.zero(), &det)
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        let f = Rationals;
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect(),
        )
    }

    #[test]
    fn rank_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(rank(&f2, &identity(&f2, 2)), 2);
        assert_eq!(rank(&Rationals, &q(&[&[1, 2], &[2, 4]])), 1);
        // boundary of the 3-cycle, edges x vertices
        let boundary = q(&[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        assert_eq!(rank(&Rationals, &boundary), 2);
    }

    #[test]
    fn kernel_and_solve_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        let m = Matrix::from_rows(2, vec![vec![1u64, 1]]);
        assert_eq!(kernel(&f2, &m), vec![vec![1, 1]]);

        let a = q(&[&[1, 1], &[1, -1]]);
        let f = Rationals;
        let sol = solve(&f, &a, &[f.one(), f.zero()]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(sol, Solution::Unique(vec![half.clone(), half]));

        let inconsistent = q(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&f, &inconsistent, &[f.one(), f.zero()]), Solution::Inconsistent);
        match solve(&f, &inconsistent, &[f.one(), f.one()]) {
            Solution::Affine { kernel, .. } => assert_eq!(kernel.len(), 1),
            other => panic!("expected affine family, got {other:?}"),
        }
    }

    #[test]
    fn determinant_routes_agree() {
        let m = [[2i64, -1, 0, 3], [1, 4, 2, -2], [0, 5, -3, 1], [7, 0, 1, 1]];
        let rat = q(&m.iter().map(|r| &r[..]).collect::<Vec<_>>());
        let ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let d = bareiss_determinant(&Integers, &ints);
        assert_eq!(determinant(&Rationals, &rat), BigRational::from_integer(d));
    }

    #[test]
    fn row_space_tracks_rank() {
        let f = FiniteField::prime(5).unwrap();
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&f, &[1, 2, 3]));
        assert!(rs.insert(&f, &[0, 1, 1]));
        assert!(!rs.insert(&f, &[1, 3, 4]));
        assert!(rs.contains(&f, &[2, 4, 1]));
        assert_eq!(rs.dim(), 2);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(rows in arb_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
            let m = q(&refs);
            prop_assert_eq!(rank(&Rationals, &m), rank(&Rationals, &m.transpose()));
            let f7 = FiniteField::prime(7).unwrap();
            let m7 = Matrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| f7.from_i64(x)).collect()).collect());
            prop_assert_eq!(rank(&f7, &m7), rank(&f7, &m7.transpose()));
        }

        #[test]
        fn bareiss_rank_matches_rational_rank(rows in arb_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
            let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
            let e = bareiss(&Integers, &ints, rows[0].len());
            prop_assert_eq!(e.pivots.len(), rank(&Rationals, &q(&refs)));
        }

        #[test]
        fn kernel_vectors_are_annihilated(rows in arb_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
            let m = q(&refs);
            let ker = kernel(&Rationals, &m);
            prop_assert_eq!(ker.len() + rank(&Rationals, &m), m.cols());
            for v in ker {
                prop_assert!(is_zero_vec(&Rationals, &mat_vec(&Rationals, &m, &v)));
            }
        }
    }
}
