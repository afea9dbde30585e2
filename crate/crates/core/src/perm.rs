//! Permutations of the point set `{1, ..., N}` and reversible-function
//! specifications.
//!
//! Two conventions meet here. A [`Permutation`] speaks 1-based point labels,
//! matching cycle notation such as `(1,3,5,6)(7,8)`. A [`Specification`] is
//! the output column of a truth table read as 0-based integers, such as
//! `(2,6,5,4,7,1,0,3)`. Point `i` of the permutation corresponds to input
//! value `i - 1` of the specification.
//!
//! Composition is always in cascade order: `p.then(&q)` applies `p` first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1, ..., N}`.
///
/// Stored 0-based internally; every public accessor speaks 1-based points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(n_points: usize) -> Result<Self> {
        if n_points == 0 {
            return Err(Error::InvalidArgument(
                "a permutation needs at least one point".into(),
            ));
        }
        Ok(Self::identity_unchecked(n_points))
    }

    pub(crate) fn identity_unchecked(n_points: usize) -> Self {
        Permutation {
            images: (0..n_points as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i - 1] = σ(i)`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let zero_based: Vec<u32> = images
            .iter()
            .map(|&x| {
                x.checked_sub(1).ok_or_else(|| {
                    Error::InvalidArgument("point 0 is not a valid 1-based label".into())
                })
            })
            .collect::<Result<_>>()?;
        Self::from_zero_based(zero_based)
    }

    /// Builds a permutation from 0-based images, `images[i] = σ(i + 1) - 1`.
    pub fn from_zero_based(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a permutation needs at least one point".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidArgument(format!(
                    "image {} out of range 1..={n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!(
                    "image {} occurs twice",
                    x + 1
                )));
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.images.len()
    }

    /// 1-based images `(σ(1), ..., σ(N))`.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// 0-based image slice, `zero_based()[i] = σ(i + 1) - 1`.
    pub fn zero_based(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cascade composition: `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.n_points() != other.n_points() {
            return Err(Error::InvalidArgument(format!(
                "cannot compose permutations on {} and {} points",
                self.n_points(),
                other.n_points()
            )));
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.n_points()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Smallest 1-based point moved by the permutation.
    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| self.images[x as usize] as usize == i)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// sorted by that point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.n_points();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Canonical cycle notation, e.g. `(1,3,5,6)(7,8)`; identity is `()`.
    pub fn format_cycles(&self) -> String {
        self.to_string()
    }

    /// Parses cycle notation over `{1, ..., n_points}`.
    ///
    /// Grammar: `perm := "()" | cycle+`, `cycle := "(" int ("," int)+ ")"`.
    /// Whitespace between tokens is ignored. Each point may appear once.
    pub fn parse_cycles(text: &str, n_points: usize) -> Result<Permutation> {
        if n_points == 0 {
            return Err(Error::InvalidArgument(
                "a permutation needs at least one point".into(),
            ));
        }
        let mut lexer = Lexer::new(text);
        let mut images: Vec<u32> = (0..n_points as u32).collect();
        let mut used = vec![false; n_points];

        lexer.skip_ws();
        if lexer.at_end() {
            return Err(Error::parse(lexer.pos, "empty input"));
        }
        let mut cycles = 0usize;
        while !lexer.at_end() {
            lexer.expect('(')?;
            lexer.skip_ws();
            if lexer.peek() == Some(')') {
                lexer.bump();
                lexer.skip_ws();
                if cycles == 0 && lexer.at_end() {
                    return Ok(Permutation {
                        images: images.into_boxed_slice(),
                    });
                }
                return Err(Error::parse(lexer.pos, "empty cycle"));
            }
            let mut cycle = Vec::new();
            loop {
                lexer.skip_ws();
                let (pos, point) = lexer.integer()?;
                if point == 0 || point as usize > n_points {
                    return Err(Error::parse(
                        pos,
                        format!("point {point} out of range 1..={n_points}"),
                    ));
                }
                let idx = point as usize - 1;
                if std::mem::replace(&mut used[idx], true) {
                    return Err(Error::parse(pos, format!("point {point} repeated")));
                }
                cycle.push(idx as u32);
                lexer.skip_ws();
                match lexer.peek() {
                    Some(',') => lexer.bump(),
                    Some(')') => {
                        lexer.bump();
                        break;
                    }
                    Some(c) => {
                        return Err(Error::parse(
                            lexer.pos,
                            format!("expected ',' or ')', found '{c}'"),
                        ))
                    }
                    None => return Err(Error::parse(lexer.pos, "unterminated cycle")),
                }
            }
            if cycle.len() < 2 {
                return Err(Error::parse(
                    lexer.pos,
                    "a cycle needs at least two points",
                ));
            }
            for (k, &from) in cycle.iter().enumerate() {
                images[from as usize] = cycle[(k + 1) % cycle.len()];
            }
            cycles += 1;
            lexer.skip_ws();
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Lexicographic rank in `0..N!` (Lehmer code).
    pub fn rank(&self) -> u64 {
        let n = self.n_points();
        let mut rank = 0u64;
        let mut used = 0u64;
        for (i, &x) in self.images.iter().enumerate() {
            let smaller_unused = x as u64 - (used & ((1u64 << x) - 1)).count_ones() as u64;
            rank = rank * (n - i) as u64 + smaller_unused;
            used |= 1 << x;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`]. Supports up to 20 points.
    pub fn unrank(mut rank: u64, n_points: usize) -> Result<Permutation> {
        if n_points == 0 || n_points > 20 {
            return Err(Error::Unsupported(format!(
                "ranking is limited to 1..=20 points, got {n_points}"
            )));
        }
        let total = factorial(n_points).expect("20! fits in u64");
        if rank >= total {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} out of range for {n_points} points"
            )));
        }
        let mut digits = vec![0u64; n_points];
        for i in (0..n_points).rev() {
            let base = (n_points - i) as u64;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut free: Vec<u32> = (0..n_points as u32).collect();
        let images = digits
            .into_iter()
            .map(|d| free.remove(d as usize))
            .collect();
        Ok(Permutation { images })
    }
}

pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.n_points(), self)
    }
}

/// Output column of a reversible truth table: `outputs[i]` is the output
/// word for input word `i`, with wire 1 as the most significant bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Specification {
    outputs: Vec<u32>,
}

impl Specification {
    pub fn new(outputs: Vec<u32>) -> Result<Self> {
        Permutation::from_zero_based(outputs.clone())
            .map_err(|e| Error::InvalidArgument(format!("not a reversible specification: {e}")))?;
        Ok(Specification { outputs })
    }

    pub fn identity(n_points: usize) -> Result<Self> {
        Ok(Permutation::identity(n_points)?.to_spec())
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    /// `σ(i) = outputs[i - 1] + 1`.
    pub fn to_perm(&self) -> Permutation {
        Permutation::from_zero_based_unchecked(self.outputs.clone())
    }
}

impl Permutation {
    pub fn to_spec(&self) -> Specification {
        Specification {
            outputs: self.images.to_vec(),
        }
    }
}

pub fn spec_to_perm(spec: &Specification) -> Permutation {
    spec.to_perm()
}

pub fn perm_to_spec(perm: &Permutation) -> Specification {
    perm.to_spec()
}

impl TryFrom<Vec<u32>> for Specification {
    type Error = Error;

    fn try_from(outputs: Vec<u32>) -> Result<Self> {
        Specification::new(outputs)
    }
}

impl From<Specification> for Vec<u32> {
    fn from(spec: Specification) -> Self {
        spec.outputs
    }
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.outputs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Specification{self}")
    }
}

impl FromStr for Specification {
    type Err = Error;

    /// Parses the image-list form `(2,6,5,4,7,1,0,3)`.
    fn from_str(text: &str) -> Result<Self> {
        let mut lexer = Lexer::new(text);
        lexer.skip_ws();
        lexer.expect('(')?;
        let mut outputs = Vec::new();
        loop {
            lexer.skip_ws();
            let (_, x) = lexer.integer()?;
            outputs.push(x);
            lexer.skip_ws();
            match lexer.peek() {
                Some(',') => lexer.bump(),
                Some(')') => {
                    lexer.bump();
                    break;
                }
                Some(c) => {
                    return Err(Error::parse(
                        lexer.pos,
                        format!("expected ',' or ')', found '{c}'"),
                    ))
                }
                None => return Err(Error::parse(lexer.pos, "unterminated image list")),
            }
        }
        lexer.skip_ws();
        if !lexer.at_end() {
            return Err(Error::parse(lexer.pos, "trailing input after image list"));
        }
        Specification::new(outputs)
    }
}

/// How a textual specification should be read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpecFormat {
    /// Decide from the text: `((...)...)` and multi-cycle text are cycle
    /// notation; a single group is an image list when it holds exactly
    /// `N` values forming a permutation of `0..N`, otherwise a cycle.
    #[default]
    Auto,
    /// 0-based image list, e.g. `(2,6,5,4,7,1,0,3)`.
    Images,
    /// 1-based cycle notation, optionally wrapped in an extra pair of
    /// parentheses, e.g. `((1,7)(2,5)(3,6,8,4))`.
    Cycles,
}

/// Reads a specification written either as an image list or in cycle
/// notation.
pub fn parse_spec_text(text: &str, n_points: usize, format: SpecFormat) -> Result<Specification> {
    let trimmed = text.trim();
    let as_cycles = |t: &str| -> Result<Specification> {
        let inner = strip_outer_parens(t).unwrap_or(t);
        Ok(Permutation::parse_cycles(inner, n_points)?.to_spec())
    };
    let as_images = |t: &str| -> Result<Specification> {
        let spec: Specification = t.parse()?;
        if spec.len() != n_points {
            return Err(Error::InvalidArgument(format!(
                "specification has {} entries, expected {n_points}",
                spec.len()
            )));
        }
        Ok(spec)
    };
    match format {
        SpecFormat::Images => as_images(trimmed),
        SpecFormat::Cycles => as_cycles(trimmed),
        SpecFormat::Auto => {
            if strip_outer_parens(trimmed).is_some() || trimmed.matches('(').count() != 1 {
                return as_cycles(trimmed);
            }
            match as_images(trimmed) {
                Ok(spec) => Ok(spec),
                Err(_) => as_cycles(trimmed),
            }
        }
    }
}

/// Returns the inside of `((...)...)` when the text is wrapped in one extra
/// pair of parentheses.
fn strip_outer_parens(text: &str) -> Option<&str> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !compact.starts_with("((") || !compact.ends_with("))") {
        return None;
    }
    let t = text.trim();
    let inner = t.strip_prefix('(')?.strip_suffix(')')?;
    // The first '(' must close at the very end for this to be a wrapper.
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != t.len() - 1 {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(inner)
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(Error::parse(self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err(Error::parse(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.text[start..self.pos];
        if digits.is_empty() {
            return Err(Error::parse(
                start,
                match self.peek() {
                    Some(c) => format!("expected an integer, found '{c}'"),
                    None => "expected an integer, found end of input".into(),
                },
            ));
        }
        digits
            .parse()
            .map(|v| (start, v))
            .map_err(|_| Error::parse(start, format!("integer '{digits}' too large")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(text: &str) -> Permutation {
        Permutation::parse_cycles(text, 8).unwrap()
    }

    #[test]
    fn identity_basics() {
        let e = Permutation::identity(8).unwrap();
        assert_eq!(e.images(), vec![1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(e.format_cycles(), "()");
        assert!(matches!(
            Permutation::identity(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn compose_is_cascade_order() {
        let r = cyc("(1,2)").then(&cyc("(2,3)")).unwrap();
        assert_eq!(r, cyc("(1,3,2)"));
        assert!(cyc("(1,2)").then(&cyc("(1,2)")).unwrap().is_identity());
        let p = cyc("(1,3,5,6)(7,8)");
        assert_eq!(p.then(&Permutation::identity(8).unwrap()).unwrap(), p);
        assert_eq!(Permutation::identity(8).unwrap().then(&p).unwrap(), p);
    }

    #[test]
    fn compose_rejects_mismatched_sizes() {
        let a = Permutation::identity(4).unwrap();
        let b = Permutation::identity(8).unwrap();
        assert!(matches!(a.then(&b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(8).unwrap().inverse().is_identity());
        let t = cyc("(1,5)(2,6)(3,7)(4,8)");
        assert_eq!(t.inverse(), t);
        let c = cyc("(1,3,5,6)");
        assert_eq!(c.inverse(), cyc("(1,6,5,3)"));
        assert!(c.then(&c.inverse()).unwrap().is_identity());
    }

    #[test]
    fn parse_and_format_examples() {
        let p = Permutation::parse_cycles("(1, 3, 5, 6)(7, 8)", 8).unwrap();
        assert_eq!(p.images(), vec![3, 2, 5, 4, 6, 1, 8, 7]);
        assert_eq!(p.format_cycles(), "(1,3,5,6)(7,8)");
        assert!(cyc("()").is_identity());
        assert!(cyc(" ( ) ").is_identity());
        assert_eq!(cyc("(7,8)").images(), vec![1, 2, 3, 4, 5, 6, 8, 7]);
        // non-canonical input is printed canonically
        assert_eq!(cyc("(8,7)(6,1,3,5)").format_cycles(), "(1,3,5,6)(7,8)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = |t: &str| match Permutation::parse_cycles(t, 8) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {t:?}, got {other:?}"),
        };
        assert_eq!(err("(1,2)(2,3)"), 6);
        assert_eq!(err("(1,9)"), 3);
        assert_eq!(err("(0,1)"), 1);
        assert_eq!(err("(1,2"), 4);
        assert_eq!(err("(1;2)"), 2);
        assert_eq!(err("1,2"), 0);
        assert_eq!(err("(1,2)x"), 5);
        assert_eq!(err(""), 0);
        err("(3)");
        err("(1,2)()");
        err("(,1)");
    }

    #[test]
    fn spec_conversion_examples() {
        let s = Specification::new(vec![2, 6, 5, 4, 7, 1, 0, 3]).unwrap();
        assert_eq!(spec_to_perm(&s).images(), vec![3, 7, 6, 5, 8, 2, 1, 4]);
        assert!(spec_to_perm(&Specification::identity(8).unwrap()).is_identity());
        assert_eq!(
            perm_to_spec(&Permutation::identity(8).unwrap()).outputs(),
            &[0, 1, 2, 3, 4, 5, 6, 7]
        );
        assert_eq!(perm_to_spec(&cyc("(7,8)")).outputs(), &[0, 1, 2, 3, 4, 5, 7, 6]);
        assert_eq!(
            perm_to_spec(&cyc("(1,5)(2,6)(3,7)(4,8)")).outputs(),
            &[4, 5, 6, 7, 0, 1, 2, 3]
        );
        assert!(Specification::new(vec![0, 0, 1]).is_err());
        assert!(Specification::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn spec_text_forms() {
        let s: Specification = "(2, 6,5,4,7,1,0,3)".parse().unwrap();
        assert_eq!(s.to_string(), "(2,6,5,4,7,1,0,3)");
        let auto = |t: &str| parse_spec_text(t, 8, SpecFormat::Auto).unwrap();
        assert_eq!(auto("(2,6,5,4,7,1,0,3)"), s);
        assert_eq!(
            auto("((1,7)(2,5)(3,6,8,4))"),
            cyc("(1,7)(2,5)(3,6,8,4)").to_spec()
        );
        assert_eq!(auto("(1,7)(2,5)(3,6,8,4)"), cyc("(1,7)(2,5)(3,6,8,4)").to_spec());
        assert_eq!(auto("(7,8)"), cyc("(7,8)").to_spec());
        assert_eq!(auto("()"), Specification::identity(8).unwrap());
        assert_eq!(auto("(1,2,3,4,5,6,7,8)"), cyc("(1,2,3,4,5,6,7,8)").to_spec());
        assert!(parse_spec_text("(1,2)", 8, SpecFormat::Images).is_err());
        assert_eq!(
            parse_spec_text("(1,2)", 8, SpecFormat::Cycles).unwrap(),
            cyc("(1,2)").to_spec()
        );
    }

    #[test]
    fn rank_unrank_small() {
        for r in 0..24 {
            assert_eq!(Permutation::unrank(r, 4).unwrap().rank(), r);
        }
        assert!(Permutation::identity(8).unwrap().rank() == 0);
        assert_eq!(cyc("(1,8)(2,7)(3,6)(4,5)").rank(), 40319);
        assert!(Permutation::unrank(40320, 8).is_err());
    }

    #[test]
    fn symmetric_group_on_eight_points_has_40320_elements() {
        assert_eq!(factorial(8), Some(40320));
        let mut seen = std::collections::HashSet::new();
        for r in 0..40320 {
            assert!(seen.insert(Permutation::unrank(r, 8).unwrap()));
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_zero_based(v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_is_associative(p in arb_perm(8), q in arb_perm(8), r in arb_perm(8)) {
            let left = p.then(&q).unwrap().then(&r).unwrap();
            let right = p.then(&q.then(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_cancels(p in arb_perm(9)) {
            prop_assert!(p.then(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().then(&p).unwrap().is_identity());
            prop_assert!(Permutation::from_zero_based(p.inverse().zero_based().to_vec()).is_ok());
        }

        #[test]
        fn text_forms_round_trip(p in arb_perm(8)) {
            prop_assert_eq!(Permutation::parse_cycles(&p.format_cycles(), 8).unwrap(), p.clone());
            let s = p.to_spec();
            prop_assert_eq!(spec_to_perm(&s), p.clone());
            prop_assert_eq!(s.to_string().parse::<Specification>().unwrap(), s);
            prop_assert_eq!(Permutation::unrank(p.rank(), 8).unwrap(), p);
        }
    }
}
