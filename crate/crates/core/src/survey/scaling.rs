use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Non-negative rational exponent, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: u32,
    den: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("exponent with zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        Ok(Exponent { num: num / g, den: den / g })
    }

    pub fn integer(p: u32) -> Self {
        Exponent { num: p, den: 1 }
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn ceil(&self) -> u32 {
        self.num.div_ceil(self.den)
    }

    pub fn floor(&self) -> u32 {
        self.num / self.den
    }

    pub fn as_integer(&self) -> Option<u32> {
        (self.den == 1).then_some(self.num)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(self, other: Exponent) -> Result<Self> {
        let overflow = || Error::Parse("exponent overflow".into());
        let num = (self.num as u64 * other.den as u64 + other.num as u64 * self.den as u64)
            .try_into()
            .map_err(|_| overflow())?;
        let den = (self.den as u64 * other.den as u64).try_into().map_err(|_| overflow())?;
        Exponent::new(num, den)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

/// Parses `"a/b"`, a decimal such as `"0.5"`, or an integer.
impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(alloc::format!("invalid exponent `{s}`"));
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            return Exponent::new(a, b).map_err(|_| bad());
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole: u32 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
            let den = 10u32.pow(frac.len() as u32);
            let frac: u32 = frac.parse().map_err(|_| bad())?;
            let num = whole.checked_mul(den).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
            return Exponent::new(num, den);
        }
        s.parse().map(Exponent::integer).map_err(|_| bad())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The depth-scaling forms found in the survey, slowest-growing first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalingForm {
    Constant,
    Log,
    LogPower,
    SqrtPolylog,
    Linear,
    LinearPolylog,
    Quadratic,
    QuadraticPolylog,
    Cubic,
    CubicLog,
    Quintic,
}

impl ScalingForm {
    pub const ALL: [ScalingForm; 11] = [
        ScalingForm::Constant,
        ScalingForm::Log,
        ScalingForm::LogPower,
        ScalingForm::SqrtPolylog,
        ScalingForm::Linear,
        ScalingForm::LinearPolylog,
        ScalingForm::Quadratic,
        ScalingForm::QuadraticPolylog,
        ScalingForm::Cubic,
        ScalingForm::CubicLog,
        ScalingForm::Quintic,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ScalingForm::Constant => "O(1)",
            ScalingForm::Log => "O(log(n))",
            ScalingForm::LogPower => "O(log^x(n))",
            ScalingForm::SqrtPolylog => "O(sqrt(n) polylog(n))",
            ScalingForm::Linear => "O(n)",
            ScalingForm::LinearPolylog => "O(n polylog(n))",
            ScalingForm::Quadratic => "O(n^2)",
            ScalingForm::QuadraticPolylog => "O(n^2 polylog(n))",
            ScalingForm::Cubic => "O(n^3)",
            ScalingForm::CubicLog => "O(n^3 log(n))",
            ScalingForm::Quintic => "O(n^5)",
        }
    }

    /// A representative descriptor; "polylog" is taken as `log² n`.
    pub fn canonical(&self) -> ScalingDescriptor {
        let (num, den, q) = match self {
            ScalingForm::Constant => (0, 1, 0),
            ScalingForm::Log => (0, 1, 1),
            ScalingForm::LogPower => (0, 1, 2),
            ScalingForm::SqrtPolylog => (1, 2, 2),
            ScalingForm::Linear => (1, 1, 0),
            ScalingForm::LinearPolylog => (1, 1, 2),
            ScalingForm::Quadratic => (2, 1, 0),
            ScalingForm::QuadraticPolylog => (2, 1, 2),
            ScalingForm::Cubic => (3, 1, 0),
            ScalingForm::CubicLog => (3, 1, 1),
            ScalingForm::Quintic => (5, 1, 0),
        };
        ScalingDescriptor {
            poly_degree: Exponent { num, den },
            polylog_degree: q,
        }
    }
}

impl fmt::Display for ScalingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Depth `O(n^p · log^q n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScalingDescriptor {
    pub poly_degree: Exponent,
    pub polylog_degree: u32,
}

impl ScalingDescriptor {
    pub fn new(poly_degree: Exponent, polylog_degree: u32) -> Self {
        ScalingDescriptor { poly_degree, polylog_degree }
    }

    /// The surveyed form this descriptor belongs to, if any.
    pub fn form(&self) -> Option<ScalingForm> {
        let q = self.polylog_degree;
        let p = self.poly_degree;
        if p == Exponent::new(1, 2).ok()? {
            return (q >= 1).then_some(ScalingForm::SqrtPolylog);
        }
        Some(match (p.as_integer()?, q) {
            (0, 0) => ScalingForm::Constant,
            (0, 1) => ScalingForm::Log,
            (0, _) => ScalingForm::LogPower,
            (1, 0) => ScalingForm::Linear,
            (1, _) => ScalingForm::LinearPolylog,
            (2, 0) => ScalingForm::Quadratic,
            (2, _) => ScalingForm::QuadraticPolylog,
            (3, 0) => ScalingForm::Cubic,
            (3, 1) => ScalingForm::CubicLog,
            (5, 0) => ScalingForm::Quintic,
            _ => return None,
        })
    }

    pub fn is_conformant(&self) -> bool {
        self.form().is_some()
    }

    /// Table label: the form's label, or a generic `O(n^p log^q(n))`.
    pub fn label(&self) -> alloc::string::String {
        match self.form() {
            Some(form) => form.label().into(),
            None => alloc::format!("O(n^{} log^{}(n))", self.poly_degree, self.polylog_degree),
        }
    }
}

impl fmt::Display for ScalingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly_degree;
        let q = self.polylog_degree;
        let poly = match p.as_integer() {
            Some(0) => None,
            Some(1) => Some(alloc::string::String::from("n")),
            _ => Some(alloc::format!("n^{p}")),
        };
        let log = match q {
            0 => None,
            1 => Some(alloc::string::String::from("log")),
            _ => Some(alloc::format!("log^{q}")),
        };
        match (poly, log) {
            (None, None) => f.write_str("1"),
            (Some(a), None) | (None, Some(a)) => f.write_str(&a),
            (Some(a), Some(b)) => write!(f, "{a}*{b}"),
        }
    }
}

/// Parses products of `1`, `n`, `n^P`, `sqrt(n)`, `log`, `log^Q` and
/// `polylog` joined by `*`, optionally wrapped in `O(…)`. `polylog` stands
/// for `log² n`; `P` may be an integer, `a/b` or a decimal.
impl FromStr for ScalingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(alloc::format!("unparseable scaling expression `{s}`"));
        let mut text = s.trim();
        if let Some(inner) = text.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
            text = inner.trim();
        }
        if text.is_empty() {
            return Err(bad());
        }
        let mut p = Exponent::ZERO;
        let mut q = 0u32;
        // factors are joined by `*` or plain juxtaposition
        for factor in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|f| !f.is_empty()) {
            match factor {
                "1" => {}
                "n" => p = p.checked_add(Exponent::integer(1))?,
                "sqrt(n)" => p = p.checked_add(Exponent::new(1, 2)?)?,
                "log" | "log(n)" => q += 1,
                "polylog" | "polylog(n)" => q += 2,
                _ => {
                    if let Some(exp) = factor.strip_prefix("n^") {
                        let exp = exp.trim_start_matches('(').trim_end_matches(')');
                        p = p.checked_add(exp.parse().map_err(|_| bad())?)?;
                    } else if let Some(exp) = factor.strip_prefix("log^") {
                        let exp = exp.trim_end_matches("(n)");
                        q += exp.parse::<u32>().map_err(|_| bad())?;
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(ScalingDescriptor { poly_degree: p, polylog_degree: q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> ScalingDescriptor {
        text.parse().unwrap()
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("1/2".parse::<Exponent>().unwrap(), Exponent::new(1, 2).unwrap());
        assert_eq!("0.5".parse::<Exponent>().unwrap(), Exponent::new(1, 2).unwrap());
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::integer(2));
        assert_eq!("2.0".parse::<Exponent>().unwrap(), Exponent::integer(2));
        assert_eq!("4/2".parse::<Exponent>().unwrap(), Exponent::integer(2));
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("-1".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        let e = Exponent::new(5, 2).unwrap();
        assert_eq!((e.floor(), e.ceil()), (2, 3));
    }

    #[test]
    fn expression_grammar() {
        assert_eq!(d("n^2"), ScalingForm::Quadratic.canonical());
        assert_eq!(d("n^2*polylog"), ScalingForm::QuadraticPolylog.canonical());
        assert_eq!(d("polylog"), ScalingForm::LogPower.canonical());
        assert_eq!(d("1"), ScalingForm::Constant.canonical());
        assert_eq!(d("sqrt(n)*polylog"), ScalingForm::SqrtPolylog.canonical());
        assert_eq!(d("n^3*log"), ScalingForm::CubicLog.canonical());
        assert_eq!(d("O(n log(n))").form(), Some(ScalingForm::LinearPolylog));
        assert_eq!(d("n^1/2 * log^3").form(), Some(ScalingForm::SqrtPolylog));
        assert!("n^".parse::<ScalingDescriptor>().is_err());
        assert!("exp(n)".parse::<ScalingDescriptor>().is_err());
        assert!("".parse::<ScalingDescriptor>().is_err());
    }

    #[test]
    fn every_form_round_trips() {
        for form in ScalingForm::ALL {
            let c = form.canonical();
            assert_eq!(c.form(), Some(form));
            assert_eq!(alloc::string::ToString::to_string(&c).parse::<ScalingDescriptor>().unwrap(), c);
        }
    }

    #[test]
    fn non_conformant_forms() {
        assert_eq!(d("n^4").form(), None);
        assert_eq!(d("n^3*log^2").form(), None);
        assert_eq!(d("sqrt(n)").form(), None);
        assert_eq!(d("n^4").label(), "O(n^4 log^0(n))");
    }
}
