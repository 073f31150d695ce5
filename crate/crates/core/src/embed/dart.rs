use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Orientation of a dart relative to its underlying edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Forward,
    Backward,
}

/// One of the two oriented halves of an edge.
///
/// Encoded as `2 * edge + b` where `b` is 0 for the forward dart and 1 for
/// the backward dart, so sorting darts sorts by edge id first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(u32);

impl Dart {
    pub fn new(edge: usize, sign: Sign) -> Self {
        let bit = match sign {
            Sign::Forward => 0,
            Sign::Backward => 1,
        };
        Dart((edge as u32) << 1 | bit)
    }

    pub fn forward(edge: usize) -> Self {
        Dart::new(edge, Sign::Forward)
    }

    pub fn backward(edge: usize) -> Self {
        Dart::new(edge, Sign::Backward)
    }

    /// Rebuilds a dart from its dense index (`0..2m`).
    pub fn from_index(index: usize) -> Self {
        Dart(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn sign(self) -> Sign {
        if self.0 & 1 == 0 {
            Sign::Forward
        } else {
            Sign::Backward
        }
    }

    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn rev(self) -> Self {
        Dart(self.0 ^ 1)
    }

    /// `+1` for a forward dart, `-1` for a backward one.
    #[inline]
    pub fn signum(self) -> i64 {
        if self.is_forward() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_forward() { '+' } else { '-' };
        write!(f, "{}{}", c, self.edge())
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid dart token `{0}` (expected +<edge> or -<edge>)")]
pub struct DartParseError(pub String);

impl FromStr for Dart {
    type Err = DartParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DartParseError(s.to_string());
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Forward, &s[1..]),
            Some(b'-') => (Sign::Backward, &s[1..]),
            _ => return Err(err()),
        };
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let edge: usize = rest.parse().map_err(|_| err())?;
        if edge > (u32::MAX >> 1) as usize {
            return Err(err());
        }
        Ok(Dart::new(edge, sign))
    }
}

/// Formats a dart sequence as whitespace-separated tokens (`+3 -1 +4`).
pub fn format_darts(darts: &[Dart]) -> String {
    let mut out = String::new();
    for (i, d) in darts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&d.to_string());
    }
    out
}

/// Parses whitespace-separated dart tokens.
pub fn parse_darts(s: &str) -> Result<Vec<Dart>, DartParseError> {
    s.split_whitespace().map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rev_is_an_involution() {
        for i in 0..20 {
            let d = Dart::from_index(i);
            assert_eq!(d.rev().rev(), d);
            assert_ne!(d.rev(), d);
            assert_eq!(d.rev().edge(), d.edge());
        }
    }

    #[test]
    fn tokens() {
        assert_eq!("+3".parse::<Dart>().unwrap(), Dart::forward(3));
        assert_eq!("-0".parse::<Dart>().unwrap(), Dart::backward(0));
        assert!("3".parse::<Dart>().is_err());
        assert!("+".parse::<Dart>().is_err());
        assert!("+-2".parse::<Dart>().is_err());
        assert!("+5r".parse::<Dart>().is_err());
        let ds = parse_darts("+3 -1  +4").unwrap();
        assert_eq!(format_darts(&ds), "+3 -1 +4");
    }

    #[test]
    fn ordering_groups_by_edge() {
        assert!(Dart::forward(0) < Dart::backward(0));
        assert!(Dart::backward(0) < Dart::forward(1));
    }
}
