use crate::error::{Error, Result};
use crate::planar::{area_form, StarPolygon, Vec2};
use crate::scalar::Scalar;
use crate::tolerance::EPS_CLOSE;

/// The `n`-periodic sequence `c_i = [V_{i-1}, V_{i+1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossProductSequence<T> {
    c: Vec<T>,
}

impl<T: Scalar> CrossProductSequence<T> {
    /// Requires `n >= 3` and every `c_i > 0`.
    pub fn new(c: Vec<T>) -> Result<Self> {
        if c.len() < 3 {
            return Err(Error::InvariantViolation(format!("need n >= 3 cross-products, got {}", c.len())));
        }
        if let Some(i) = c.iter().position(|x| !x.is_finite_val() || !(*x > T::zero())) {
            return Err(Error::InvariantViolation(format!("c_{i} = {:?} is not positive", c[i])));
        }
        Ok(Self { c })
    }

    /// As [`new`](Self::new), additionally requiring the closure residuals to vanish.
    pub fn closed(c: Vec<T>) -> Result<Self> {
        let seq = Self::new(c)?;
        let worst = closure_residual(&seq).iter().fold(T::zero(), |m, r| {
            let a = r.abs_val();
            if a > m {
                a
            } else {
                m
            }
        });
        if !(worst <= T::tol(EPS_CLOSE)) {
            return Err(Error::ClosureViolation(worst.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(seq)
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn values(&self) -> &[T] {
        &self.c
    }

    /// `c_i` with the index taken mod `n`.
    pub fn get(&self, i: i64) -> T {
        self.c[i.rem_euclid(self.n() as i64) as usize]
    }
}

pub fn cross_products<T: Scalar>(p: &StarPolygon<T>) -> CrossProductSequence<T> {
    let c = (0..p.n() as i64).map(|i| area_form(p.vertex(i - 1), p.vertex(i + 1))).collect();
    CrossProductSequence { c }
}

/// The sum of the cross-products.
pub fn f_n<T: Scalar>(c: &CrossProductSequence<T>) -> T {
    c.c.iter().fold(T::zero(), |a, &b| a + b)
}

/// `F_{i,j}` for any `j >= i` via `F_{i,k+1} = c_k F_{i,k} - F_{i,k-1}`,
/// seeded with `F_{i,i} = 0`, `F_{i,i+1} = 1`.
pub(crate) fn continuant<T: Scalar>(c: &CrossProductSequence<T>, i: i64, j: i64) -> T {
    debug_assert!(j >= i);
    let (mut prev, mut cur) = (T::zero(), T::one());
    if j == i {
        return prev;
    }
    for k in i + 1..j {
        let next = c.get(k) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The tridiagonal determinant with diagonal `c_{i+1} .. c_{j-1}`.
pub fn frieze_determinant<T: Scalar>(c: &CrossProductSequence<T>, i: i64, j: i64) -> Result<T> {
    if j - i < 2 {
        return Err(Error::IndexRange { i, j });
    }
    Ok(continuant(c, i, j))
}

/// `(F_{0,n-1} - 1, F_{-1,n-1}, F_{0,n})`; all zero iff the recurrence closes up antiperiodically.
pub fn closure_residual<T: Scalar>(c: &CrossProductSequence<T>) -> [T; 3] {
    let n = c.n() as i64;
    [continuant(c, 0, n - 1) - T::one(), continuant(c, -1, n - 1), continuant(c, 0, n)]
}

/// `F_{i-1,j-1} F_{i,j} - F_{i,j-1} F_{i-1,j} - 1`, the unimodular frieze rule.
pub fn frieze_relation_check<T: Scalar>(c: &CrossProductSequence<T>, i: i64, j: i64) -> Result<T> {
    if j - i < 2 {
        return Err(Error::IndexRange { i, j });
    }
    Ok(continuant(c, i - 1, j - 1) * continuant(c, i, j) - continuant(c, i, j - 1) * continuant(c, i - 1, j) - T::one())
}

/// Rebuilds the polygon from `V_{i+1} = c_i V_i - V_{i-1}` starting at
/// `(V_{-1}, V_0)`.
pub fn reconstruct<T: Scalar>(c: &CrossProductSequence<T>, v_minus1: Vec2<T>, v0: Vec2<T>) -> Result<StarPolygon<T>> {
    let seed = area_form(v_minus1, v0);
    if !((seed - T::one()).abs_val() <= T::tol(EPS_CLOSE)) {
        return Err(Error::InvariantViolation(format!("[V_-1, V_0] = {seed:?}, expected 1")));
    }
    let n = c.n();
    let mut v = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (v_minus1, v0);
    v.push(cur);
    for i in 0..n {
        let next = cur * c.get(i as i64) - prev;
        prev = cur;
        cur = next;
        v.push(cur);
    }
    let gap = |a: Vec2<T>, b: Vec2<T>| {
        let d = a + b;
        let (x, y) = (d.x.abs_val(), d.y.abs_val());
        if x > y {
            x
        } else {
            y
        }
    };
    let g1 = gap(v[n - 1], v_minus1);
    let g2 = gap(v[n], v0);
    let worst = if g1 > g2 { g1 } else { g2 };
    if !(worst <= T::tol(EPS_CLOSE)) {
        return Err(Error::ClosureViolation(worst.to_f64().unwrap_or(f64::NAN)));
    }
    v.truncate(n);
    StarPolygon::new(v)
}
