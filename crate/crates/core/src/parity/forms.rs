//! Exact membership tests for the quadratic sequences `a·l(l+1)` and
//! `a·l(3l∓1)`.

use std::fmt;

use num_integer::Roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormShape {
    /// `l(l+1)`
    Oblong,
    /// `l(3l-1)`
    PentMinus,
    /// `l(3l+1)`
    PentPlus,
}

/// `m = scale · shape(l)` for some integer `l ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub shape: FormShape,
    pub scale: u64,
}

impl QuadraticForm {
    pub const OBLONG: Self = Self::new(FormShape::Oblong, 1);
    pub const TWO_OBLONG: Self = Self::new(FormShape::Oblong, 2);
    pub const SIX_OBLONG: Self = Self::new(FormShape::Oblong, 6);
    pub const PENT_MINUS: Self = Self::new(FormShape::PentMinus, 1);
    pub const PENT_PLUS: Self = Self::new(FormShape::PentPlus, 1);

    pub const fn new(shape: FormShape, scale: u64) -> Self {
        QuadraticForm { shape, scale }
    }

    pub fn eval(&self, l: u64) -> u128 {
        let l = u128::from(l);
        let body = match self.shape {
            FormShape::Oblong => l * (l + 1),
            FormShape::PentMinus => l * (3 * l).saturating_sub(1),
            FormShape::PentPlus => l * (3 * l + 1),
        };
        u128::from(self.scale) * body
    }

    /// The unique `l ≥ 0` with `eval(l) == m`, if any.
    pub fn solve(&self, m: u64) -> Option<u64> {
        if self.scale == 0 || !m.is_multiple_of(self.scale) {
            return None;
        }
        let m = u128::from(m / self.scale);
        if m == 0 {
            return Some(0);
        }
        let l = match self.shape {
            // l(l+1) = m  <=>  (2l+1)^2 = 4m+1
            FormShape::Oblong => {
                let s = exact_sqrt(4 * m + 1)?;
                (s - 1) / 2
            }
            // l(3l∓1) = m  <=>  (6l∓1)^2 = 12m+1
            FormShape::PentMinus => {
                let s = exact_sqrt(12 * m + 1)?;
                let num = s + 1;
                if num % 6 != 0 {
                    return None;
                }
                num / 6
            }
            FormShape::PentPlus => {
                let s = exact_sqrt(12 * m + 1)?;
                let num = s.checked_sub(1)?;
                if num % 6 != 0 {
                    return None;
                }
                num / 6
            }
        };
        u64::try_from(l).ok()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.shape {
            FormShape::Oblong => "l(l+1)",
            FormShape::PentMinus => "l(3l-1)",
            FormShape::PentPlus => "l(3l+1)",
        };
        if self.scale == 1 {
            f.write_str(body)
        } else {
            write!(f, "{}{}", self.scale, body)
        }
    }
}

fn exact_sqrt(x: u128) -> Option<u128> {
    let r = x.sqrt();
    (r * r == x).then_some(r)
}

/// `solve_form(form, m)`: the `l ≥ 0` with `form(l) = m`, if one exists.
pub fn solve_form(form: QuadraticForm, m: u64) -> Option<u64> {
    form.solve(m)
}

/// A non-representability hypothesis: `value` is not `form(l)` for any
/// `l ≥ 1` and any of the listed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    /// Symbolic value as written in the theorem, e.g. `3t(t+1)`.
    pub expression: &'static str,
    pub value: u64,
    pub forms: Vec<QuadraticForm>,
}

impl Hypothesis {
    pub fn holds(&self) -> bool {
        self.forms
            .iter()
            .all(|f| !matches!(f.solve(self.value), Some(l) if l >= 1))
    }

    /// The offending `(form, l)` when the hypothesis fails.
    pub fn violation(&self) -> Option<(QuadraticForm, u64)> {
        self.forms
            .iter()
            .find_map(|f| f.solve(self.value).filter(|&l| l >= 1).map(|l| (*f, l)))
    }

    /// Human-readable statement, e.g. `3t(t+1) != l(l+1)`.
    pub fn describe(&self) -> String {
        let forms: Vec<String> = self.forms.iter().map(ToString::to_string).collect();
        format!("{} != {}", self.expression, forms.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_examples() {
        assert_eq!(solve_form(QuadraticForm::OBLONG, 6), Some(2));
        assert_eq!(solve_form(QuadraticForm::OBLONG, 18), None);
        assert_eq!(solve_form(QuadraticForm::PENT_MINUS, 2), Some(1));
        assert_eq!(solve_form(QuadraticForm::PENT_PLUS, 2), None);
        assert_eq!(solve_form(QuadraticForm::PENT_PLUS, 14), Some(2));
        assert_eq!(solve_form(QuadraticForm::OBLONG, 0), Some(0));
        assert_eq!(solve_form(QuadraticForm::PENT_MINUS, 0), Some(0));
        assert_eq!(solve_form(QuadraticForm::PENT_PLUS, 0), Some(0));
        assert_eq!(
            solve_form(QuadraticForm::new(FormShape::PentMinus, 7), 14),
            Some(1)
        );
        assert_eq!(solve_form(QuadraticForm::SIX_OBLONG, 7), None);
    }

    #[test]
    fn hypothesis_examples() {
        let h = Hypothesis {
            expression: "3t(t+1)",
            value: 18,
            forms: vec![QuadraticForm::OBLONG],
        };
        assert!(h.holds());
        let h = Hypothesis {
            expression: "3t(t+1)",
            value: 6,
            forms: vec![QuadraticForm::OBLONG],
        };
        assert_eq!(h.violation(), Some((QuadraticForm::OBLONG, 2)));
        let h = Hypothesis {
            expression: "7t(3t-1)",
            value: 14,
            forms: vec![QuadraticForm::PENT_MINUS, QuadraticForm::PENT_PLUS],
        };
        assert!(!h.holds());
        assert_eq!(h.describe(), "7t(3t-1) != l(3l-1), l(3l+1)");
    }

    #[test]
    fn solve_matches_enumeration() {
        let forms = [
            QuadraticForm::OBLONG,
            QuadraticForm::TWO_OBLONG,
            QuadraticForm::SIX_OBLONG,
            QuadraticForm::PENT_MINUS,
            QuadraticForm::PENT_PLUS,
            QuadraticForm::new(FormShape::Oblong, 3),
            QuadraticForm::new(FormShape::PentMinus, 7),
            QuadraticForm::new(FormShape::PentPlus, 14),
        ];
        for form in forms {
            let mut table = std::collections::HashMap::new();
            for l in 0..2000u64 {
                let v = form.eval(l);
                if v <= 100_000 {
                    table.insert(v as u64, l);
                }
            }
            for m in 0..=100_000u64 {
                assert_eq!(form.solve(m), table.get(&m).copied(), "{form} at {m}");
            }
        }
    }
}
