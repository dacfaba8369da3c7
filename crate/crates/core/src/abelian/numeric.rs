//! Fixed-point complex roots and logarithms of absolute values.
//!
//! Reals are `BigInt`s scaled by `2^w`. Only used to propose relation
//! candidates; nothing computed here is ever accepted without an exact check.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Unknown};

fn uncertified(msg: &str) -> Error {
    Error::Unknown(Unknown::Uncertified(msg.into()))
}

fn fmul(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    (a * b) >> w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cx {
    fn from_f64(z: Complex64, w: u32) -> Cx {
        let scale = |x: f64| -> BigInt {
            let (m, e) = frexp(x);
            let mant = BigInt::from((m * (1u64 << 53) as f64) as i64);
            let shift = e - 53 + w as i32;
            if shift >= 0 {
                mant << shift as u32
            } else {
                mant >> (-shift) as u32
            }
        };
        Cx { re: scale(z.re), im: scale(z.im) }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Cx, w: u32) -> Cx {
        Cx { re: fmul(&self.re, &o.re, w) - fmul(&self.im, &o.im, w), im: fmul(&self.re, &o.im, w) + fmul(&self.im, &o.re, w) }
    }

    fn div(&self, o: &Cx, w: u32) -> Option<Cx> {
        let den = fmul(&o.re, &o.re, w) + fmul(&o.im, &o.im, w);
        if den.is_zero() {
            return None;
        }
        let re = fmul(&self.re, &o.re, w) + fmul(&self.im, &o.im, w);
        let im = fmul(&self.im, &o.re, w) - fmul(&self.re, &o.im, w);
        Some(Cx { re: (re << w) / &den, im: (im << w) / &den })
    }

    fn max_abs(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (0.0, 0);
    }
    let e = x.abs().log2().floor() as i32 + 1;
    (x / 2f64.powi(e), e)
}

/// Evaluates an integer polynomial (low to high) at `z`.
pub(crate) fn eval_int_poly(coeffs: &[BigInt], z: &Cx, w: u32) -> Cx {
    let mut acc = Cx { re: BigInt::zero(), im: BigInt::zero() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, w);
        acc.re += c << w;
    }
    acc
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Durand-Kerner approximation of all roots of a monic polynomial.
fn approx_roots(coeffs: &[BigInt]) -> Option<Vec<Complex64>> {
    let f: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    if f.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let d = f.len() - 1;
    let bound = 1.0 + f[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let eval = |z: Complex64| f.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * bound.min(4.0)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(z)
}

/// All complex roots of a monic squarefree integer polynomial to `w` bits.
pub(crate) fn roots(coeffs: &[BigInt], w: u32) -> Result<Vec<Cx>, Error> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Ok(vec![Cx { re: -(&coeffs[0] << w), im: BigInt::zero() }]);
    }
    let approx = approx_roots(coeffs).ok_or_else(|| uncertified("root approximation overflowed"))?;
    let df = derivative(coeffs);
    let tol = BigInt::one() << 8u32;
    let mut out = Vec::with_capacity(d);
    for z0 in approx {
        let mut z = Cx::from_f64(z0, w);
        let mut converged = false;
        for _ in 0..200 {
            let num = eval_int_poly(coeffs, &z, w);
            let den = eval_int_poly(&df, &z, w);
            let Some(step) = num.div(&den, w) else { break };
            z = z.sub(&step);
            if step.max_abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(uncertified("Newton refinement of a root did not converge"));
        }
        out.push(z);
    }
    let sep = BigInt::one() << (w / 2);
    for i in 0..d {
        for j in i + 1..d {
            if out[i].sub(&out[j]).max_abs() < sep {
                return Err(uncertified("roots not separated at working precision"));
            }
        }
    }
    Ok(out)
}

fn atanh_fixed(t: &BigInt, w: u32) -> BigInt {
    let t2 = fmul(t, t, w);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut n = 1u64;
    loop {
        term = fmul(&term, &t2, w);
        n += 2;
        let s = &term / BigInt::from(n);
        if s.is_zero() {
            return sum;
        }
        sum += s;
    }
}

/// Natural log of `x / 2^w` for `x > 0`.
pub(crate) fn ln_fixed(x: &BigInt, w: u32) -> Result<BigInt, Error> {
    if x.sign() != Sign::Plus {
        return Err(uncertified("logarithm of a value that rounds to zero"));
    }
    let one = BigInt::one() << w;
    let k = x.bits() as i64 - 1 - w as i64;
    let m = if k >= 0 { x >> k as u32 } else { x << (-k) as u32 };
    let t = ((&m - &one) << w) / (&m + &one);
    let ln_m = atanh_fixed(&t, w) * 2;
    let ln2 = atanh_fixed(&(&one / 3), w) * 2;
    Ok(ln2 * k + ln_m)
}

/// `ln |z|`.
pub(crate) fn ln_abs(z: &Cx, w: u32) -> Result<BigInt, Error> {
    let s = fmul(&z.re, &z.re, w) + fmul(&z.im, &z.im, w);
    Ok(ln_fixed(&s, w)? / 2)
}

#[cfg(test)]
pub(crate) fn to_f64(x: &BigInt, w: u32) -> f64 {
    let shift = x.bits().saturating_sub(60) as u32;
    let top = (x >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - w as i32)
}
