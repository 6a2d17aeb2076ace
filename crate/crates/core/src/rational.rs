//! Exact rationals.

use crate::error::{Error, Result};
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Parses `p/q` or an integer. Decimal notation is rejected on purpose.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected an exact fraction p/q, got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Always `p/q` form, even for integers, so printed values parse back unchanged.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_rejects_decimals() {
        assert_eq!(parse_rational("61/36").unwrap(), rat(61, 36));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(4, 2)), "2/1");
    }

    proptest! {
        #[test]
        fn inverse_product_is_one(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(a != 0 && b != 0);
            let x = rat(a, b);
            prop_assert_eq!(x * rat(b, a), rat(1, 1));
        }

        #[test]
        fn order_is_total_and_transitive(v in proptest::collection::vec((-50i64..50, 1i64..50), 3)) {
            let x: Vec<Rational> = v.iter().map(|&(n, d)| rat(n, d)).collect();
            for a in &x { for b in &x {
                prop_assert!(a <= b || b <= a);
                for c in &x { if a <= b && b <= c { prop_assert!(a <= c); } }
            }}
        }
    }
}
