//! Chebyshev polynomials of the first, second, and fourth kinds.
//!
//! Two independent routes are provided on purpose: fast three-term
//! recurrence evaluation in `f64` (used by the solver), and exact
//! integer-coefficient polynomials in the monomial basis (used by tests to
//! check derivative identities coefficientwise).

/// `T_k(t)`, first kind: `T_0 = 1`, `T_1 = t`, `T_k = 2 t T_{k-1} - T_{k-2}`.
pub fn chebyshev_t(k: usize, t: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut prev, mut cur) = (1.0, t);
            for _ in 2..=k {
                (prev, cur) = (cur, 2.0 * t * cur - prev);
            }
            cur
        }
    }
}

/// `U_k(t)`, second kind, with the conventions `U_{-1} = 0`, `U_{-2} = -1`.
pub fn chebyshev_u(k: isize, t: f64) -> f64 {
    match k {
        -2 => -1.0,
        -1 => 0.0,
        0 => 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, 2.0 * t);
            for _ in 2..=k {
                (prev, cur) = (cur, 2.0 * t * cur - prev);
            }
            cur
        }
    }
}

/// `W_k(t)`, fourth kind: `W_k(cos x) = sin((k + 1/2) x) / sin(x / 2)`, with
/// `W_0 = 1`, `W_1 = 2t + 1`, the usual three-term recurrence, and the
/// convention `W_{-1} = -1`.
pub fn chebyshev_w(k: isize, t: f64) -> f64 {
    match k {
        -1 => -1.0,
        0 => 1.0,
        1 => 2.0 * t + 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, 2.0 * t + 1.0);
            for _ in 2..=k {
                (prev, cur) = (cur, 2.0 * t * cur - prev);
            }
            cur
        }
    }
}

/// A polynomial with exact integer coefficients in the monomial basis;
/// `coeffs[i]` multiplies `t^i`. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    pub coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: i128) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// Builds from raw coefficients, normalizing trailing zeros away.
    pub fn from_coeffs(coeffs: Vec<i128>) -> Self {
        IntPoly { coeffs }.trim()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        IntPoly { coeffs }.trim()
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scaled(-1))
    }

    pub fn scaled(&self, factor: i128) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
        .trim()
    }

    /// Product with the linear factor `a + b t`.
    pub fn mul_linear(&self, a: i128, b: i128) -> IntPoly {
        let mut coeffs = vec![0i128; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += a * c;
            coeffs[i + 1] += b * c;
        }
        IntPoly { coeffs }.trim()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as i128 * c)
            .collect();
        IntPoly { coeffs }.trim()
    }

    pub fn nth_derivative(&self, order: usize) -> IntPoly {
        let mut p = self.clone();
        for _ in 0..order {
            p = p.derivative();
        }
        p
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * t + c as f64)
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

/// `T_k` in the monomial basis.
pub fn t_poly(k: usize) -> IntPoly {
    let mut prev = IntPoly::constant(1);
    if k == 0 {
        return prev;
    }
    let mut cur = IntPoly { coeffs: vec![0, 1] };
    for _ in 2..=k {
        let next = cur.mul_linear(0, 2).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `W_k` in the monomial basis, honoring `W_{-1} = -1`.
pub fn w_poly(k: isize) -> IntPoly {
    if k == -1 {
        return IntPoly::constant(-1);
    }
    let mut prev = IntPoly::constant(1);
    if k == 0 {
        return prev;
    }
    let mut cur = IntPoly { coeffs: vec![1, 2] };
    for _ in 2..=k {
        let next = cur.mul_linear(0, 2).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_kind_values() {
        // T_2(t) = 2t^2 - 1.
        assert_eq!(chebyshev_t(2, 0.0), -1.0);
        assert_eq!(chebyshev_t(0, 0.3), 1.0);
        assert_eq!(chebyshev_t(1, 0.3), 0.3);
    }

    #[test]
    fn fourth_kind_values() {
        assert_eq!(chebyshev_w(1, 0.0), 1.0);
        assert_eq!(chebyshev_w(-1, 0.42), -1.0);
        assert_eq!(chebyshev_w(0, 0.42), 1.0);
    }

    #[test]
    fn trig_identities() {
        for k in 0..12usize {
            for i in 0..=20 {
                let theta = std::f64::consts::PI * i as f64 / 20.0;
                let t = theta.cos();
                assert!((chebyshev_t(k, t) - (k as f64 * theta).cos()).abs() < 1e-10);
                if theta > 1e-9 {
                    let w = ((k as f64 + 0.5) * theta).sin() / (theta / 2.0).sin();
                    assert!(
                        (chebyshev_w(k as isize, t) - w).abs() < 1e-9,
                        "k={k} theta={theta}"
                    );
                }
            }
        }
    }

    #[test]
    fn polys_match_recurrences() {
        for k in 0..15usize {
            for i in 0..=10 {
                let t = -1.0 + 0.2 * i as f64;
                assert!((t_poly(k).eval(t) - chebyshev_t(k, t)).abs() < 1e-8);
                assert!((w_poly(k as isize).eval(t) - chebyshev_w(k as isize, t)).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn w_is_sum_of_consecutive_u() {
        // W_k = U_k + U_{k-1}.
        for k in 0..12isize {
            for i in 0..=10 {
                let t = -1.0 + 0.2 * i as f64;
                let lhs = chebyshev_w(k, t);
                let rhs = chebyshev_u(k, t) + chebyshev_u(k - 1, t);
                assert!((lhs - rhs).abs() < 1e-8);
            }
        }
    }

    proptest! {
        #[test]
        fn product_identity_for_w(k in 0isize..20, raw in -0.999f64..0.999) {
            // t W_k = (W_{k+1} + W_{k-1}) / 2.
            let t = raw;
            let lhs = t * chebyshev_w(k, t);
            let rhs = 0.5 * (chebyshev_w(k + 1, t) + chebyshev_w(k - 1, t));
            prop_assert!((lhs - rhs).abs() < 1e-8 * (1.0 + lhs.abs()));
        }

        #[test]
        fn derivative_of_t_is_k_u(k in 1usize..15, raw in -0.999f64..0.999) {
            let dt = t_poly(k).derivative().eval(raw);
            let expected = k as f64 * chebyshev_u(k as isize - 1, raw);
            prop_assert!((dt - expected).abs() < 1e-6 * (1.0 + expected.abs()));
        }
    }
}
