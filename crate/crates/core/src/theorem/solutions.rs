use std::fmt;

use serde::Serialize;

use super::identities::{insertion, InsertionKind};
use super::TheoremError;
use crate::cf::{one_minus_periodic, BadClass, Digit, PeriodicCF};
use crate::quadfield::QuadRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    SumIsOne,
    XPlusYIsZ,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::SumIsOne => "x+y+z=1",
            Relation::XPlusYIsZ => "x+y=z",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub word: PeriodicCF,
    pub value: QuadRat,
    pub class: BadClass,
}

impl Component {
    pub fn from_word(word: PeriodicCF) -> Result<Self, TheoremError> {
        let value = word.value()?;
        let class = word.bad_class();
        Ok(Component { word, value, class })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTriple {
    pub x: Component,
    pub y: Component,
    pub z: Component,
    pub relation: Relation,
}

impl SolutionTriple {
    pub fn from_words(
        x: PeriodicCF,
        y: PeriodicCF,
        z: PeriodicCF,
        relation: Relation,
    ) -> Result<Self, TheoremError> {
        Ok(SolutionTriple {
            x: Component::from_word(x)?,
            y: Component::from_word(y)?,
            z: Component::from_word(z)?,
            relation,
        })
    }

    pub fn components(&self) -> [&Component; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn max_digit(&self) -> Digit {
        self.components()
            .iter()
            .map(|c| c.word.max_digit())
            .max()
            .unwrap()
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in ["x", "y", "z"].iter().zip(self.components()) {
            writeln!(
                f,
                "  {name} = {} = {}  (B={}, j={})",
                c.value, c.word, c.class.bound, c.class.index
            )?;
        }
        Ok(())
    }
}

/// Exact check of the relation, the ordering `x ≤ y (≤ z)`, and that each
/// component's word, value and class are consistent.
pub fn check_sum(t: &SolutionTriple, relation: Relation) -> Result<bool, TheoremError> {
    let (x, y, z) = (&t.x.value, &t.y.value, &t.z.value);
    let relation_holds = match relation {
        Relation::SumIsOne => x.checked_add(y)?.checked_add(z)? == QuadRat::from_int(1, x.d())?,
        Relation::XPlusYIsZ => &x.checked_add(y)? == z,
    };
    let ordered =
        x.cmp_value(y)?.is_le() && (relation == Relation::XPlusYIsZ || y.cmp_value(z)?.is_le());
    let consistent = t
        .components()
        .iter()
        .all(|c| c.word.value().as_ref() == Ok(&c.value) && c.word.bad_class() == c.class);
    Ok(relation_holds && ordered && consistent)
}

fn w(pre: &[Digit], period: &[Digit]) -> PeriodicCF {
    PeriodicCF::new(pre.to_vec(), period.to_vec()).expect("valid literal word")
}

fn triple(x: PeriodicCF, y: PeriodicCF, z: PeriodicCF, rel: Relation) -> SolutionTriple {
    SolutionTriple::from_words(x, y, z, rel).expect("literal words evaluate in Q(√2) or Q(√3)")
}

/// The two solutions of `x+y+z=1` in B₂,₁ (with ordering).
pub fn main_solutions() -> Vec<SolutionTriple> {
    vec![
        triple(
            w(&[3], &[1, 2]),
            w(&[], &[2, 1]),
            w(&[], &[2, 1]),
            Relation::SumIsOne,
        ),
        triple(
            w(&[3], &[2]),
            w(&[3], &[2]),
            w(&[], &[2]),
            Relation::SumIsOne,
        ),
    ]
}

/// The four solutions of `x+y=z` in B₂,₁.
pub fn main2_solutions() -> Result<Vec<SolutionTriple>, TheoremError> {
    let sqrt3_z = one_minus_periodic(&w(&[], &[2, 1]))?;
    Ok(vec![
        triple(
            w(&[3], &[1, 2]),
            w(&[], &[2, 1]),
            sqrt3_z,
            Relation::XPlusYIsZ,
        ),
        triple(
            w(&[], &[2, 1]),
            w(&[], &[2, 1]),
            w(&[], &[1, 2]),
            Relation::XPlusYIsZ,
        ),
        triple(
            w(&[3], &[2]),
            w(&[3], &[2]),
            w(&[1, 1], &[2]),
            Relation::XPlusYIsZ,
        ),
        triple(
            w(&[3], &[2]),
            w(&[], &[2]),
            w(&[1], &[2]),
            Relation::XPlusYIsZ,
        ),
    ])
}

/// Three sporadic solutions with two leading digits equal to 3.
pub fn b22_solutions() -> Vec<SolutionTriple> {
    let p = [1, 2];
    vec![
        triple(
            w(&[3, 3], &p),
            w(&[3, 3], &p),
            w(&[2, 1], &p),
            Relation::SumIsOne,
        ),
        triple(
            w(&[3, 1], &p),
            w(&[3, 1], &p),
            w(&[2, 3], &p),
            Relation::SumIsOne,
        ),
        triple(
            w(&[3, 1], &p),
            w(&[3, 3], &p),
            w(&[2, 2, 2], &[2, 1]),
            Relation::SumIsOne,
        ),
    ]
}

/// Member ℓ of the infinite family with `x ≠ y`.
pub fn scalene_family(ell: usize) -> Result<SolutionTriple, TheoremError> {
    let twos = vec![2; ell];
    let mut xw = vec![3];
    xw.extend(&twos);
    let mut yw = xw.clone();
    xw.push(1);
    yw.push(3);
    let zw = vec![2; 4 + 2 * ell];
    let a = Component::from_word(PeriodicCF::new(xw, vec![1, 2])?)?;
    let b = Component::from_word(PeriodicCF::new(yw, vec![1, 2])?)?;
    let z = Component::from_word(PeriodicCF::new(zw, vec![1, 2])?)?;
    let (x, y) = if a.value.cmp_value(&b.value)?.is_le() {
        (a, b)
    } else {
        (b, a)
    };
    Ok(SolutionTriple {
        x,
        y,
        z,
        relation: Relation::SumIsOne,
    })
}

/// A symbol of the insertion code over {2, 11211}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CodeSymbol {
    Two,
    Block,
}

impl CodeSymbol {
    fn kind(self) -> InsertionKind {
        match self {
            CodeSymbol::Two => InsertionKind::Two,
            CodeSymbol::Block => InsertionKind::OneOneTwoOneOne,
        }
    }

    /// Digits this symbol contributes after the leading 3 of `x`.
    fn x_block(self) -> &'static [Digit] {
        match self {
            CodeSymbol::Two => &[2],
            CodeSymbol::Block => &[3, 1, 3],
        }
    }

    /// Digits this symbol contributes after the leading 2 of `z`.
    fn z_block(self) -> &'static [Digit] {
        match self {
            CodeSymbol::Two => &[2],
            CodeSymbol::Block => &[1, 1, 2, 1, 1],
        }
    }
}

/// Parses a code such as `2.11211.2` (dots, commas or spaces separate symbols;
/// concatenation like `211211` is split greedily).
pub fn parse_code(text: &str) -> Result<Vec<CodeSymbol>, TheoremError> {
    let compact: String = text
        .chars()
        .filter(|c| !matches!(c, '.' | ',' | ' ' | '·'))
        .collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("11211") {
            out.push(CodeSymbol::Block);
            rest = r;
        } else if let Some(r) = rest.strip_prefix('2') {
            out.push(CodeSymbol::Two);
            rest = r;
        } else {
            return Err(TheoremError::Param(format!("bad insertion code {text:?}")));
        }
    }
    Ok(out)
}

pub const MAX_CODE_LEN: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseSolution {
    Sqrt2,
    Sqrt3,
}

/// Applies the code's insertions to the √2 base solution, both on digit
/// words and on exact values, and checks that the two agree.
pub fn generate_solutions(code: &[CodeSymbol]) -> Result<SolutionTriple, TheoremError> {
    generate_from(BaseSolution::Sqrt2, code)
}

pub fn generate_from(
    base: BaseSolution,
    code: &[CodeSymbol],
) -> Result<SolutionTriple, TheoremError> {
    if code.len() > MAX_CODE_LEN {
        return Err(TheoremError::Param(format!(
            "code longer than {MAX_CODE_LEN}"
        )));
    }
    let start = match base {
        BaseSolution::Sqrt2 => main_solutions().remove(1),
        BaseSolution::Sqrt3 if code.is_empty() => return Ok(main_solutions().remove(0)),
        BaseSolution::Sqrt3 => {
            return Err(TheoremError::Unsupported(
                "insertion words for the sqrt(3) base solution are not available".into(),
            ))
        }
    };
    let (mut xw, mut zw) = (start.x.word.clone(), start.z.word.clone());
    let (mut xv, mut yv, mut zv) = (start.x.value, start.y.value, start.z.value);
    for &sym in code {
        let step = insertion(sym.kind(), &xv, &yv, &zv)?;
        if !step.residual.is_zero() {
            return Err(TheoremError::Param("insertion broke the sum".into()));
        }
        (xv, yv, zv) = (step.x, step.y, step.z);
        debug_assert_eq!((xw.digit(0), zw.digit(0)), (3, 2));
        xw = xw.tail(1).prepend(&[&[3][..], sym.x_block()].concat())?;
        zw = zw.tail(1).prepend(&[&[2][..], sym.z_block()].concat())?;
    }
    let out = SolutionTriple::from_words(xw.clone(), xw, zw, Relation::SumIsOne)?;
    if out.x.value != xv || out.y.value != yv || out.z.value != zv {
        return Err(TheoremError::Param(
            "digit insertion disagrees with the exact transforms".into(),
        ));
    }
    Ok(out)
}

/// Class of `x` (and `y`) read off the code alone: the last 3 of `x` sits at
/// the end of the block contributed by the first `11211` symbol.
pub fn predicted_class(code: &[CodeSymbol]) -> BadClass {
    let index = match code.iter().position(|&c| c == CodeSymbol::Block) {
        None => 1,
        Some(i) => {
            let after: usize = code[i + 1..].iter().map(|c| c.x_block().len()).sum();
            1 + after + CodeSymbol::Block.x_block().len()
        }
    };
    BadClass { bound: 2, index }
}
