//! Exact polynomial and rational-function arithmetic with real root
//! isolation.
//!
//! Coefficients are arbitrary-precision integers; correlation-matrix
//! determinants overflow 64 bits quickly as word length grows. Polynomials
//! store coefficients in ascending degree order (`coeffs[k]` multiplies
//! `z^k`). Determinants use fraction-free Bareiss elimination, root
//! isolation uses Sturm chains with exact sign evaluation, and series
//! coefficients come from exact long division in `z^-1`; no floating point
//! enters until a bracketed root is converted for output.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default bracket width for root isolation.
pub const DEFAULT_ROOT_TOL: f64 = 1e-13;
const NEWTON_POLISH_STEPS: usize = 3;

/// Polynomial with arbitrary-precision integer coefficients, ascending
/// degree order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * z^degree`.
    pub fn monomial<T: Into<BigInt>>(c: T, degree: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(ascending: &[i64]) -> Self {
        Self::from_coeffs(ascending.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Exact sign at a rational point (clears the denominator first).
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let num = x.numer();
        let den = x.denom();
        let d = match self.degree() {
            None => return 0,
            Some(d) => d,
        };
        // sum of c_k * num^k * den^(d-k), same sign as p(x) since den > 0
        let mut acc = BigInt::zero();
        for k in (0..=d).rev() {
            acc = acc * num + &self.coeffs[k] * den.pow((d - k) as u32);
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn mul_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Non-negative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_positive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division in `Z[z]`; `None` when the division does not come out
    /// exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % lead) != BigInt::zero() {
                return None;
            }
            let q = &top / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`, exact in Z[z].
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut steps = match r.degree() {
            Some(rd) if rd >= dd => rd - dd + 1,
            _ => 0,
        };
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.leading().unwrap().clone();
            let shifted = d.mul_power(rd - dd).mul_bigint(&top);
            r = &r.mul_bigint(&lead) - &shifted;
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.mul_bigint(&lead);
        }
        r
    }

    /// Full gcd over `Z[z]` (content included), positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_positive().mul_bigint(&other.content());
        }
        if other.is_zero() {
            return self.primitive_positive().mul_bigint(&self.content());
        }
        let content = num_integer::gcd(self.content(), other.content());
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_positive();
            a = b;
            b = r;
        }
        a.mul_bigint(&content)
    }

    /// Product of the distinct irreducible factors (multiplicities dropped).
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.primitive_positive();
        if p.degree() == Some(0) {
            return p;
        }
        let g = p.gcd(&p.derivative());
        p.exact_div(&g)
            .expect("gcd divides the polynomial")
            .primitive_positive()
    }

    pub fn to_f64_coeffs(&self) -> Option<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().filter(|v| v.is_finite()))
            .collect()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(k) + rhs.coeff(k);
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(k) - rhs.coeff(k);
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Quotient of integer polynomials kept in fully reduced canonical form:
/// the denominator is nonzero with positive leading coefficient and the
/// gcd of numerator and denominator (content included) is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: IntPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0) && self.den.is_monic()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::InvalidParameter(
                "division by the zero rational function".into(),
            ));
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// `None` when the denominator vanishes at `x`.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }

    /// First `len` coefficients of the expansion `sum f_k z^-k`, by exact
    /// long division. Requires deg(num) <= deg(den).
    pub fn series(&self, len: usize) -> Result<Vec<BigRational>> {
        if self.is_zero() {
            return Ok(vec![BigRational::zero(); len]);
        }
        let d = self.den.degree().unwrap();
        if self.num.degree().unwrap_or(0) > d {
            return Err(Error::ImproperRational);
        }
        let lead = BigRational::from(self.den.coeff(d));
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = if k <= d {
                BigRational::from(self.num.coeff(d - k))
            } else {
                BigRational::zero()
            };
            let j_lo = k.saturating_sub(d);
            for j in j_lo..k {
                let den_idx = d + j - k;
                acc -= BigRational::from(self.den.coeff(den_idx)) * &out[j];
            }
            out.push(acc / &lead);
        }
        Ok(out)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

fn is_single_term(p: &IntPolynomial) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        if is_single_term(&self.num) {
            write!(f, "{}/", self.num)?;
        } else {
            write!(f, "({})/", self.num)?;
        }
        if is_single_term(&self.den) {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

/// Linear recurrence extracted from a rational generating function.
///
/// `f[k + order] = sum coeffs[j] * f[k + j]` holds for every `k >= start`;
/// `initial` carries `f_0 .. f_{start + order - 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub order: usize,
    pub coeffs: Vec<BigRational>,
    pub initial: Vec<BigRational>,
    pub start: usize,
    char_poly: IntPolynomial,
}

impl Recurrence {
    /// First `len` terms of the sequence.
    pub fn iterate(&self, len: usize) -> Vec<BigRational> {
        let mut out = self.initial.clone();
        out.truncate(len);
        while out.len() < len {
            let k = out.len() - self.order;
            let mut acc = BigRational::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                acc += c * &out[k + j];
            }
            out.push(acc);
        }
        out
    }

    /// Characteristic polynomial (primitive form of the denominator).
    pub fn characteristic(&self) -> &IntPolynomial {
        &self.char_poly
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            return write!(f, "f[k] = 0 for k >= {}", self.start.max(1));
        }
        write!(f, "f[k+{}] =", self.order)?;
        let mut any = false;
        for j in (0..self.order).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if !any {
                if c.is_negative() {
                    write!(f, " -")?;
                }
            } else {
                write!(f, " {sign}")?;
            }
            any = true;
            if mag.is_one() {
                write!(f, " f[k+{j}]")?;
            } else {
                write!(f, " {mag} f[k+{j}]")?;
            }
        }
        if !any {
            write!(f, " 0")?;
        }
        write!(f, " (k >= {})", self.start)
    }
}

/// Extracts the linear recurrence satisfied by the series coefficients of a
/// proper rational function, together with enough initial terms to iterate.
pub fn recurrence_from_rational(f: &RationalFunction) -> Result<Recurrence> {
    if f.is_zero() {
        return Ok(Recurrence {
            order: 0,
            coeffs: Vec::new(),
            initial: Vec::new(),
            start: 0,
            char_poly: IntPolynomial::one(),
        });
    }
    let d = f.denominator().degree().unwrap();
    if f.numerator().degree().unwrap_or(0) > d {
        return Err(Error::ImproperRational);
    }
    let start = usize::from(!f.numerator().coeff(0).is_zero());
    let initial = f.series(start + d)?;
    let lead = BigRational::from(f.denominator().coeff(d));
    let coeffs = (0..d)
        .map(|j| -BigRational::from(f.denominator().coeff(j)) / &lead)
        .collect();
    Ok(Recurrence {
        order: d,
        coeffs,
        initial,
        start,
        char_poly: f.denominator().primitive_positive(),
    })
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn bareiss_det(matrix: &[Vec<IntPolynomial>]) -> Result<IntPolynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquareMatrix);
    }
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let mut m = matrix.to_vec();
    let mut sign = 1i32;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(IntPolynomial::zero());
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { -&det } else { det })
}

/// Laplace-expansion determinant; independent slow oracle for tests.
pub fn laplace_det(matrix: &[Vec<IntPolynomial>]) -> Result<IntPolynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquareMatrix);
    }
    fn go(m: &[Vec<IntPolynomial>], cols: &mut Vec<usize>, row: usize) -> IntPolynomial {
        if cols.is_empty() {
            return IntPolynomial::one();
        }
        let mut acc = IntPolynomial::zero();
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            if !m[row][c].is_zero() {
                let sub = go(m, cols, row + 1);
                let term = &m[row][c] * &sub;
                acc = if idx % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            cols.insert(idx, c);
        }
        acc
    }
    let mut cols: Vec<usize> = (0..n).collect();
    Ok(go(matrix, &mut cols, 0))
}

/// Sum of the entries of `M^-1` as a reduced rational function.
///
/// Uses the rank-one identity `det(M + J) = det(M) + 1^T adj(M) 1` with `J`
/// the all-ones matrix, so only two fraction-free determinants are needed.
pub fn rational_matrix_inverse_sum(matrix: &[Vec<IntPolynomial>]) -> Result<RationalFunction> {
    let det = bareiss_det(matrix)?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let one = IntPolynomial::one();
    let bumped: Vec<Vec<IntPolynomial>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e + &one).collect())
        .collect();
    let det_bumped = bareiss_det(&bumped)?;
    RationalFunction::new(&det_bumped - &det, det)
}

/// An interval on which a polynomial changes sign strictly, so bisection is
/// guaranteed to isolate a root.
#[derive(Clone, Debug)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub polynomial: IntPolynomial,
}

impl RootBracket {
    /// Validates `lo < hi` and a strict sign change.
    pub fn new(polynomial: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidParameter("empty bracket".into()));
        }
        let slo = polynomial.sign_at(&lo);
        let shi = polynomial.sign_at(&hi);
        if slo == 0 || shi == 0 || slo == shi {
            return Err(Error::NoSignChange);
        }
        Ok(Self { lo, hi, polynomial })
    }

    /// Refines the bracketed root to within `tol`.
    pub fn isolate(&self, tol: f64) -> Result<f64> {
        isolate_dominant_positive_root(&self.polynomial, &self.lo, &self.hi, tol)
    }
}

/// Bisects a strict sign-change bracket down to width `tol`, then polishes
/// with a few Newton steps clamped to the bracket. Deterministic.
pub fn isolate_dominant_positive_root(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    tol: f64,
) -> Result<f64> {
    if lo >= hi {
        return Err(Error::InvalidParameter("empty bracket".into()));
    }
    let slo = p.sign_at(lo);
    let shi = p.sign_at(hi);
    if slo == 0 || shi == 0 || slo == shi {
        return Err(Error::NoSignChange);
    }
    let tol_r = BigRational::from_float(tol.max(f64::MIN_POSITIVE))
        .expect("tolerance is finite");
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let two = BigRational::from(BigInt::from(2));
    while &hi - &lo > tol_r {
        let mid = (&lo + &hi) / &two;
        let smid = p.sign_at(&mid);
        if smid == 0 {
            return Ok(mid.to_f64().unwrap());
        }
        if smid == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lo_f = lo.to_f64().unwrap();
    let hi_f = hi.to_f64().unwrap();
    let mut best = 0.5 * (lo_f + hi_f);
    if let Some(cs) = p.to_f64_coeffs() {
        let eval = |x: f64| cs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let deriv: Vec<f64> = cs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        let eval_d = |x: f64| deriv.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let mut x = best;
        for _ in 0..NEWTON_POLISH_STEPS {
            let fx = eval(x);
            let dx = eval_d(x);
            if dx == 0.0 || !fx.is_finite() || !dx.is_finite() {
                break;
            }
            let next = x - fx / dx;
            if !(lo_f..=hi_f).contains(&next) {
                break;
            }
            x = next;
        }
        if eval(x).abs() <= eval(best).abs() {
            best = x;
        }
    }
    Ok(best)
}

/// Largest real root of `p` in the half-open interval `(0, hi]`, isolated by
/// a Sturm chain of the squarefree part and refined to `tol`.
///
/// Robust to multiple roots (the squarefree part restores a sign change).
/// Returns `None` when `p` has no root there.
pub fn largest_positive_root(
    p: &IntPolynomial,
    hi: &BigRational,
    tol: f64,
) -> Result<Option<f64>> {
    if p.is_zero() {
        return Err(Error::InvalidParameter(
            "root isolation on the zero polynomial".into(),
        ));
    }
    // strip z^j so the Sturm chain starts with p(0) != 0
    let mut low_zero = 0;
    while p.coeff(low_zero).is_zero() {
        low_zero += 1;
    }
    let stripped = IntPolynomial::from_coeffs(p.coeffs()[low_zero..].to_vec());
    let sf = stripped.squarefree_part();
    if sf.degree() == Some(0) {
        return Ok(None);
    }
    if sf.sign_at(hi) == 0 {
        return Ok(hi.to_f64());
    }
    let chain = sturm_chain(&sf);
    let zero = BigRational::zero();
    let total = count_roots(&chain, &zero, hi);
    if total <= 0 {
        return Ok(None);
    }
    let mut lo = zero;
    let mut hi = hi.clone();
    let two = BigRational::from(BigInt::from(2));
    while count_roots(&chain, &lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if sf.sign_at(&mid) == 0 {
            return Ok(mid.to_f64());
        }
        if count_roots(&chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // single simple root strictly inside (lo, hi): endpoints have opposite sign
    Ok(Some(isolate_dominant_positive_root(&sf, &lo, &hi, tol)?))
}

// Sturm chains over rational coefficients; degrees here are small enough
// that coefficient growth in the remainder sequence is not a concern.

#[derive(Clone)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPolynomial) -> Self {
        Self(p.coeffs().iter().map(|c| BigRational::from(c.clone())).collect())
    }

    fn trim(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Self(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self(Vec::new());
        }
        Self::trim(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
                .collect(),
        )
    }

    fn sign_at(&self, x: &BigRational) -> i32 {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("remainder by zero");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        loop {
            let rd = match Self::trim(r.clone()).degree() {
                Some(rd) if rd >= dd => rd,
                _ => break,
            };
            let q = &r[rd] / &lead;
            for i in 0..=dd {
                let t = &q * &d.0[i];
                r[rd - dd + i] -= t;
            }
            r[rd] = BigRational::zero();
        }
        Self::trim(r)
    }
}

fn sturm_chain(p: &IntPolynomial) -> Vec<RatPoly> {
    let p0 = RatPoly::from_int(p);
    let p1 = p0.derivative();
    let mut chain = vec![p0, p1];
    loop {
        let len = chain.len();
        if chain[len - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[len - 2].rem(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut prev = 0i32;
    let mut changes = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

/// Number of distinct real roots in `(a, b]` (requires `p(a) != 0`).
fn count_roots(chain: &[RatPoly], a: &BigRational, b: &BigRational) -> isize {
    sign_variations(chain, a) as isize - sign_variations(chain, b) as isize
}
