//! Double-double (~32 significant digits) reference values for the
//! rounding-growth check: the two largest first- and second-order
//! differentiation-matrix entries recomputed in extended precision.
//!
//! Grid orders are powers of two, so the node fractions k/n are exact dyadic
//! rationals and the only approximation anywhere is the Taylor cosine, summed
//! far past double-double precision.

#[derive(Debug, Clone, Copy)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from_f64(a: f64) -> Dd {
        Dd { hi: a, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, c: f64) -> Dd {
        let (p, e) = two_prod(self.hi, c);
        let e = e + self.lo * c;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, c: f64) -> Dd {
        let q1 = self.hi / c;
        let r = self.sub(Dd::from_f64(q1).mul_f64(c));
        let q2 = r.hi / c;
        let r2 = r.sub(Dd::from_f64(q2).mul_f64(c));
        let q3 = r2.hi / c;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }
}

/// pi to double-double precision: the f64 constant plus its residual.
fn dd_pi() -> Dd {
    Dd::new(std::f64::consts::PI, 1.2246467991473532e-16)
}

/// cos(pi * num / den) with den a power of two, so the fraction is exact.
pub fn cos_pi_frac(num: i64, den: i64) -> Dd {
    // fold into [0, 1/2] by periodicity and symmetry, exactly in integers
    let mut num = num.rem_euclid(2 * den); // r in [0, 2)
    let mut sign = 1.0;
    if num > den {
        num = 2 * den - num; // cos(2 pi - x) = cos(x)
    }
    if 2 * num > den {
        num = den - num; // cos(pi - x) = -cos(x)
        sign = -sign;
    }
    // x = pi * num/den <= pi/2; the dyadic ratio is exact in f64
    let x = dd_pi().mul_f64(num as f64 / den as f64);
    let x2 = x.mul(x);
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    for i in 1..=28 {
        term = term.mul(x2).div_f64((2 * i - 1) as f64 * (2 * i) as f64);
        sum = if i % 2 == 1 {
            sum.sub(term)
        } else {
            sum.add(term)
        };
    }
    sum.mul_f64(sign)
}

/// Extended-precision d_01 of the first-order matrix on a grid of order n:
/// (2/n) (sum_(k=1)^(n-1) k^2 cos(k pi/n)) - n.
pub fn d01_first_order(n: usize) -> f64 {
    let mut sum = Dd::from_f64(0.0);
    for k in 1..n {
        let t1k = (k * k) as f64;
        sum = sum.add(cos_pi_frac(k as i64, n as i64).mul_f64(t1k));
    }
    sum.mul_f64(2.0 / n as f64)
        .sub(Dd::from_f64(n as f64))
        .to_f64()
}

/// Extended-precision d_01 of the second-order matrix:
/// (2/n) (sum_(k=2)^(n-1) (k^2 (k^2-1)/3) cos(k pi/n)) - n (n^2-1)/3.
pub fn d01_second_order(n: usize) -> f64 {
    let mut sum = Dd::from_f64(0.0);
    for k in 2..n {
        let t2k = (k * k) as f64 * ((k * k - 1) as f64) / 3.0;
        sum = sum.add(cos_pi_frac(k as i64, n as i64).mul_f64(t2k));
    }
    let nf = n as f64;
    sum.mul_f64(2.0 / nf)
        .sub(Dd::from_f64(nf * (nf * nf - 1.0) / 3.0))
        .to_f64()
}

#[cfg(test)]
mod sanity {
    use super::*;

    #[test]
    fn cosine_matches_f64_values() {
        for (num, den) in [(1i64, 4i64), (3, 8), (7, 16), (31, 32), (5, 4), (9, 8)] {
            let want = (num as f64 * std::f64::consts::PI / den as f64).cos();
            let got = cos_pi_frac(num, den).to_f64();
            assert!(
                (got - want).abs() <= 2.0 * f64::EPSILON,
                "cos(pi {num}/{den}): {got} vs {want}"
            );
        }
    }

    #[test]
    fn first_order_matches_closed_form() {
        // d_01 = -2 / (1 - cos(pi/n)) = -1 / sin^2(pi/(2n))
        for n in [4usize, 8, 16] {
            let s = (std::f64::consts::PI / (2.0 * n as f64)).sin();
            let want = -1.0 / (s * s);
            let got = d01_first_order(n);
            assert!(
                ((got - want) / want).abs() <= 1e-13,
                "n={n}: {got} vs {want}"
            );
        }
    }
}
