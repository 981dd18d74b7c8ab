use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, Rat};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: alloc::vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        RatMatrix { rows: n, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = Rat::from_integer(m[(i, j)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix::new(self.rows, self.cols, self.data.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn rank(&self) -> usize {
        let rhs: Vec<Rat> = alloc::vec![Rat::zero(); self.rows];
        rref(self, &rhs).pivots.len()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let piv = a[(col, col)].recip();
            a.scale_row(col, &piv);
            inv.scale_row(col, &piv);
            for i in 0..n {
                if i != col && !a[(i, col)].is_zero() {
                    let f = -a[(i, col)].clone();
                    a.add_row_multiple(i, col, &f);
                    inv.add_row_multiple(i, col, &f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = &self.data[i * self.cols + j] * f;
            self.data[i * self.cols + j] = v;
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * f;
            self.data[dst * self.cols + j] += v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Elements of a rational vector space that can sit on the right-hand side
/// of a linear system.
pub trait RatVector: Clone + PartialEq {
    fn zero_vector() -> Self;
    fn is_zero_vector(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, factor: &Rat);
    fn scale(&mut self, factor: &Rat);
}

impl RatVector for Rat {
    fn zero_vector() -> Self {
        Zero::zero()
    }
    fn is_zero_vector(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, factor: &Rat) {
        *self += other * factor;
    }
    fn scale(&mut self, factor: &Rat) {
        *self *= factor;
    }
}

/// Reduced row echelon form of an augmented system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<T> {
    /// Nonzero rows of the reduced matrix, one per pivot.
    pub rows: RatMatrix,
    pub rhs: Vec<T>,
    pub pivots: Vec<usize>,
    /// False when some zero row of the reduction has a nonzero right-hand side.
    pub consistent: bool,
}

pub fn rref<T: RatVector>(a: &RatMatrix, b: &[T]) -> Echelon<T> {
    assert_eq!(a.rows(), b.len(), "one right-hand side per row");
    let mut m = a.clone();
    let mut rhs: Vec<T> = b.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        rhs.swap(p, r);
        let inv = m[(r, col)].recip();
        m.scale_row(r, &inv);
        rhs[r].scale(&inv);
        for i in 0..m.rows() {
            if i != r && !m[(i, col)].is_zero() {
                let f = -m[(i, col)].clone();
                m.add_row_multiple(i, r, &f);
                let src = rhs[r].clone();
                rhs[i].add_scaled(&src, &f);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let consistent = rhs[r..].iter().all(RatVector::is_zero_vector);
    let rows = RatMatrix::from_rows(m.cols(), (0..r).map(|i| m.row(i).to_vec()).collect());
    rhs.truncate(r);
    Echelon { rows, rhs, pivots, consistent }
}

/// Exact solution set of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<T> {
    /// Free variables set to zero.
    pub particular: Vec<T>,
    /// Saturated integer basis of the kernel, in Hermite normal form.
    pub kernel: IntMatrix,
}

/// Solves `A x = b` over the rationals, with `b` drawn from any rational
/// vector space. Returns `None` when the system is inconsistent.
pub fn linear_solve<T: RatVector>(a: &RatMatrix, b: &[T]) -> Option<Solution<T>> {
    let ech = rref(a, b);
    if !ech.consistent {
        return None;
    }
    let n = a.cols();
    let mut particular: Vec<T> = (0..n).map(|_| T::zero_vector()).collect();
    for (i, &p) in ech.pivots.iter().enumerate() {
        particular[p] = ech.rhs[i].clone();
    }
    Some(Solution { particular, kernel: kernel_of_echelon(&ech.rows, &ech.pivots) })
}

/// Saturated integer kernel `{x in Z^n : A x = 0}` in Hermite normal form.
pub fn integer_kernel(a: &RatMatrix) -> IntMatrix {
    let zeros: Vec<Rat> = alloc::vec![Rat::zero(); a.rows()];
    let ech = rref(a, &zeros);
    kernel_of_echelon(&ech.rows, &ech.pivots)
}

fn kernel_of_echelon(rows: &RatMatrix, pivots: &[usize]) -> IntMatrix {
    let n = rows.cols();
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[(i, f)].clone();
        }
        basis.push(super::primitive_integer(&v));
    }
    // Integer vectors spanning the rational kernel; their saturation is the
    // full integer kernel.
    super::saturate(&IntMatrix::from_rows(n, basis)).0
}

/// Integer vector with the given entries, as rationals.
pub fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}
