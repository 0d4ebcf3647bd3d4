//! Exact rational numbers: decimal parsing without a floating-point detour and
//! the two text renderings used in reports (exact `p/q` and rounded decimal).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Significant digits used by every decimal rendering.
pub const DECIMAL_DIGITS: u32 = 12;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal literal (`-12`, `2.5`, `1e-3`, `+0.75E2`) or an exact
/// fraction (`7/3`, `-1/2`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Number(text.to_string(), "empty literal".into()));
    }
    let lower = s.to_ascii_lowercase();
    let bare = lower.trim_start_matches(['+', '-']);
    if matches!(bare, "inf" | "infinity" | "nan") {
        return Err(Error::NonFinite(text.to_string()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let num = parse_decimal(p).map_err(|_| bad(text, "numerator"))?;
        let den = parse_decimal(q).map_err(|_| bad(text, "denominator"))?;
        if den.is_zero() {
            return Err(Error::NonFinite(text.to_string()));
        }
        return Ok(num / den);
    }
    parse_decimal(s).map_err(|_| bad(text, "not a decimal or p/q literal"))
}

fn bad(text: &str, why: &str) -> Error {
    Error::Number(text.to_string(), why.to_string())
}

fn parse_decimal(s: &str) -> std::result::Result<Rational, ()> {
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = body[i + 1..].parse().map_err(|_| ())?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(());
    }
    if exponent.unsigned_abs() > 4096 {
        return Err(());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| ())? };
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn exact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded (half away from zero) to [`DECIMAL_DIGITS`]
/// significant digits, in positional notation with trailing zeros removed.
pub fn decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10u32);

    // 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    loop {
        let lo = pow10(e);
        if a < lo {
            e -= 1;
        } else if a >= pow10(e + 1) {
            e += 1;
        } else {
            break;
        }
    }
    let shift = DECIMAL_DIGITS as i64 - 1 - e;
    let scaled = a * pow10(shift);
    let mut m = round_half_away(&scaled);
    let mut shift = shift;
    if m == num_traits::pow(ten.clone(), DECIMAL_DIGITS as usize) {
        m /= &ten;
        shift -= 1;
    }
    let digits = m.to_string();
    let mut out = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{digits}{zeros}")
    } else {
        let shift = shift as usize;
        let padded =
            if digits.len() <= shift { format!("{}{}", "0".repeat(shift - digits.len() + 1), digits) } else { digits };
        let (ip, fp) = padded.split_at(padded.len() - shift);
        let fp = fp.trim_end_matches('0');
        if fp.is_empty() {
            ip.to_string()
        } else {
            format!("{ip}.{fp}")
        }
    };
    if negative {
        out.insert(0, '-');
    }
    out
}

fn pow10(e: i64) -> Rational {
    let ten = BigInt::from(10u32);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

fn round_half_away(r: &Rational) -> BigInt {
    debug_assert!(!r.is_negative());
    let (q, rem) = r.numer().div_rem(r.denom());
    if BigInt::from(2u32) * rem >= *r.denom() {
        q + 1
    } else {
        q
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `r * scale` where the product is known to be an integer.
pub fn scaled_integer(r: &Rational, scale: &BigInt) -> BigInt {
    let v = r * Rational::from_integer(scale.clone());
    debug_assert!(v.is_integer());
    v.to_integer()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(if r.numer().sign() == Sign::Minus { f64::NEG_INFINITY } else { f64::INFINITY })
}
