//! Symbolic A¹-homotopy bookkeeping for smooth complete toric varieties.
//!
//! The variety is the quotient of `A^{Σ(1)} - Z_Σ` by the torus dual to its
//! Picard group. With `d` the smallest size of a minimal non-face and `r` the
//! number of non-faces of that size:
//!
//! * the cover is A¹-connected with `π_i = 0` for `1 <= i <= d - 2`;
//! * `π_{d-1}` of the cover surjects onto `KMW(d)^r`, and is exactly that when
//!   any two size-`d` non-faces share at most `d - 2` rays;
//! * the covering sequence gives `π_i(X) = π_i(cover)` for `i >= 2` and
//!   `1 -> π_1(cover) -> π_1(X) -> Gm^rank(Pic) -> 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cox::{arrangement, pairwise_intersection_ok, picard_group, CoxError, SubspaceArrangement};
use crate::fan::{validate, Fan, ValidationReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A sheaf of groups described symbolically.
#[derive(Clone, Debug)]
pub enum GroupExpr {
    Trivial,
    /// `Gm^k`
    TorusPower(u32),
    /// `KMW(weight)^mult`
    MWPower {
        weight: u32,
        mult: u32,
    },
    DirectSum(Vec<GroupExpr>),
    /// `1 -> kernel -> G -> quotient -> 1`, extension class unspecified.
    Extension {
        kernel: Box<GroupExpr>,
        quotient: Box<GroupExpr>,
    },
    /// Only a surjection onto the given group is known.
    Partial(Box<GroupExpr>),
}

impl GroupExpr {
    pub fn torus(k: u32) -> GroupExpr {
        GroupExpr::TorusPower(k).normalized()
    }

    pub fn mw(weight: u32, mult: u32) -> GroupExpr {
        GroupExpr::MWPower { weight, mult }.normalized()
    }

    pub fn extension(kernel: GroupExpr, quotient: GroupExpr) -> GroupExpr {
        GroupExpr::Extension {
            kernel: Box::new(kernel),
            quotient: Box::new(quotient),
        }
        .normalized()
    }

    pub fn partial(target: GroupExpr) -> GroupExpr {
        GroupExpr::Partial(Box::new(target)).normalized()
    }

    pub fn sum(terms: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::DirectSum(terms).normalized()
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.normalized(), GroupExpr::Trivial)
    }

    pub fn is_partial(&self) -> bool {
        matches!(self.normalized(), GroupExpr::Partial(_))
    }

    pub fn contains_extension(&self) -> bool {
        match self {
            GroupExpr::Extension { .. } => true,
            GroupExpr::DirectSum(ts) => ts.iter().any(GroupExpr::contains_extension),
            GroupExpr::Partial(t) => t.contains_extension(),
            _ => false,
        }
    }

    /// Canonical form: zero powers become `Trivial`, sums are flattened with
    /// like powers merged and terms sorted, extensions by a trivial group
    /// collapse.
    pub fn normalized(&self) -> GroupExpr {
        match self {
            GroupExpr::Trivial => GroupExpr::Trivial,
            GroupExpr::TorusPower(0) => GroupExpr::Trivial,
            GroupExpr::TorusPower(k) => GroupExpr::TorusPower(*k),
            GroupExpr::MWPower { mult: 0, .. } => GroupExpr::Trivial,
            GroupExpr::MWPower { weight, mult } => GroupExpr::MWPower {
                weight: *weight,
                mult: *mult,
            },
            GroupExpr::DirectSum(terms) => {
                let mut flat = Vec::new();
                for t in terms {
                    match t.normalized() {
                        GroupExpr::Trivial => {}
                        GroupExpr::DirectSum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                let mut torus = 0u32;
                let mut mw: std::collections::BTreeMap<u32, u32> = Default::default();
                let mut rest = Vec::new();
                for t in flat {
                    match t {
                        GroupExpr::TorusPower(k) => torus += k,
                        GroupExpr::MWPower { weight, mult } => *mw.entry(weight).or_default() += mult,
                        other => rest.push(other),
                    }
                }
                let mut out = Vec::new();
                if torus > 0 {
                    out.push(GroupExpr::TorusPower(torus));
                }
                out.extend(mw.into_iter().map(|(weight, mult)| GroupExpr::MWPower { weight, mult }));
                rest.sort_by_key(|t| t.to_string());
                out.extend(rest);
                match out.len() {
                    0 => GroupExpr::Trivial,
                    1 => out.pop().unwrap(),
                    _ => GroupExpr::DirectSum(out),
                }
            }
            GroupExpr::Extension { kernel, quotient } => {
                let k = kernel.normalized();
                let q = quotient.normalized();
                match (&k, &q) {
                    (GroupExpr::Trivial, _) => q,
                    (_, GroupExpr::Trivial) => k,
                    _ => GroupExpr::Extension {
                        kernel: Box::new(k),
                        quotient: Box::new(q),
                    },
                }
            }
            GroupExpr::Partial(t) => GroupExpr::Partial(Box::new(t.normalized())),
        }
    }

    fn structurally_equal(&self, other: &GroupExpr) -> bool {
        use GroupExpr::*;
        match (self, other) {
            (Trivial, Trivial) => true,
            (TorusPower(a), TorusPower(b)) => a == b,
            (MWPower { weight: w1, mult: m1 }, MWPower { weight: w2, mult: m2 }) => w1 == w2 && m1 == m2,
            (DirectSum(a), DirectSum(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.structurally_equal(y)),
            (
                Extension {
                    kernel: k1,
                    quotient: q1,
                },
                Extension {
                    kernel: k2,
                    quotient: q2,
                },
            ) => k1.structurally_equal(k2) && q1.structurally_equal(q2),
            (Partial(a), Partial(b)) => a.structurally_equal(b),
            _ => false,
        }
    }
}

impl PartialEq for GroupExpr {
    fn eq(&self, other: &GroupExpr) -> bool {
        self.normalized().structurally_equal(&other.normalized())
    }
}

impl Eq for GroupExpr {}

/// Grammar:
///
/// ```text
/// expr := "0" | "Gm" | "Gm^" k | "KMW(" n ")" | "KMW(" n ")^" r
///       | "sum(" expr ("," expr)* ")"
///       | "ext(" expr " -> . -> " expr ")"
///       | "surj-onto(" expr ")"
/// ```
///
/// Powers equal to 1 are omitted. Rendering always uses the normalized form.
impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(e: &GroupExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                GroupExpr::Trivial => write!(f, "0"),
                GroupExpr::TorusPower(1) => write!(f, "Gm"),
                GroupExpr::TorusPower(k) => write!(f, "Gm^{k}"),
                GroupExpr::MWPower { weight, mult: 1 } => write!(f, "KMW({weight})"),
                GroupExpr::MWPower { weight, mult } => write!(f, "KMW({weight})^{mult}"),
                GroupExpr::DirectSum(ts) => {
                    write!(f, "sum(")?;
                    for (i, t) in ts.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        go(t, f)?;
                    }
                    write!(f, ")")
                }
                GroupExpr::Extension { kernel, quotient } => {
                    write!(f, "ext(")?;
                    go(kernel, f)?;
                    write!(f, " -> . -> ")?;
                    go(quotient, f)?;
                    write!(f, ")")
                }
                GroupExpr::Partial(t) => {
                    write!(f, "surj-onto(")?;
                    go(t, f)?;
                    write!(f, ")")
                }
            }
        }
        go(&self.normalized(), f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse group expression at byte {pos}: {msg}")]
pub struct ParseGroupError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseGroupError> {
        Err(ParseGroupError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseGroupError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn number(&mut self) -> Result<u32, ParseGroupError> {
        self.skip_ws();
        let digits = self.src[self.pos..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a number");
        }
        let n = self.src[self.pos..self.pos + digits]
            .parse()
            .or_else(|_| self.err("number out of range"))?;
        self.pos += digits;
        Ok(n)
    }

    fn power(&mut self) -> Result<u32, ParseGroupError> {
        if self.src[self.pos..].starts_with('^') {
            self.pos += 1;
            self.number()
        } else {
            Ok(1)
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseGroupError> {
        if self.eat("surj-onto(") {
            let t = self.expr()?;
            self.expect(")")?;
            Ok(GroupExpr::Partial(Box::new(t)))
        } else if self.eat("ext(") {
            let k = self.expr()?;
            self.expect("->")?;
            self.expect(".")?;
            self.expect("->")?;
            let q = self.expr()?;
            self.expect(")")?;
            Ok(GroupExpr::Extension {
                kernel: Box::new(k),
                quotient: Box::new(q),
            })
        } else if self.eat("sum(") {
            let mut terms = vec![self.expr()?];
            while self.eat(",") {
                terms.push(self.expr()?);
            }
            self.expect(")")?;
            Ok(GroupExpr::DirectSum(terms))
        } else if self.eat("KMW(") {
            let weight = self.number()?;
            self.expect(")")?;
            let mult = self.power()?;
            Ok(GroupExpr::MWPower { weight, mult })
        } else if self.eat("Gm") {
            Ok(GroupExpr::TorusPower(self.power()?))
        } else if self.eat("0") {
            Ok(GroupExpr::Trivial)
        } else {
            self.err("expected a group expression")
        }
    }
}

impl FromStr for GroupExpr {
    type Err = ParseGroupError;
    fn from_str(s: &str) -> Result<GroupExpr, ParseGroupError> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e.normalized())
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Low-degree homotopy of `A^N - Z` for a coordinate subspace arrangement `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverHomotopy {
    pub connected: bool,
    /// Codimension of `Z`; `None` for the empty arrangement (affine space).
    pub d: Option<usize>,
    /// Number of components of codimension exactly `d`.
    pub r: usize,
    pub pairwise_ok: bool,
    /// `π_i = 0` for `1 <= i <= vanish_below`.
    pub vanish_below: usize,
    /// `π_{d-1}`, or the known surjection target when only that is known.
    pub first: GroupExpr,
}

pub fn cox_cover_homotopy(arr: &SubspaceArrangement) -> CoverHomotopy {
    let Some(d) = arr.codim() else {
        return CoverHomotopy {
            connected: true,
            d: None,
            r: 0,
            pairwise_ok: true,
            vanish_below: usize::MAX,
            first: GroupExpr::Trivial,
        };
    };
    let r = arr.components_of_size(d).len();
    let pairwise_ok = pairwise_intersection_ok(arr, d);
    let target = GroupExpr::mw(d as u32, r as u32);
    CoverHomotopy {
        connected: d >= 2,
        d: Some(d),
        r,
        pairwise_ok,
        vanish_below: d.saturating_sub(2),
        first: if pairwise_ok {
            target
        } else {
            GroupExpr::partial(target)
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxSummary {
    pub ambient: usize,
    pub d: Option<usize>,
    pub r: usize,
    pub pairwise_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstHigher {
    pub degree: usize,
    pub group: GroupExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub variety: String,
    pub connected: bool,
    pub cox: CoxSummary,
    pub pi1: GroupExpr,
    /// `[lo, hi]` with `π_i = 0` for `lo <= i <= hi`; empty when `hi < lo`.
    pub vanishing: Option<[usize; 2]>,
    pub first_higher: Option<FirstHigher>,
    pub notes: Vec<String>,
    pub pic_rank: usize,
    pub provenance: Option<String>,
    pub version: String,
}

impl HomotopyReport {
    /// `π_i` as far as the report determines it.
    pub fn group_in_degree(&self, i: usize) -> Option<GroupExpr> {
        if i == 1 {
            return Some(self.pi1.clone());
        }
        if let Some([lo, hi]) = self.vanishing {
            if lo <= i && i <= hi {
                return Some(GroupExpr::Trivial);
            }
        }
        match &self.first_higher {
            Some(fh) if fh.degree == i && i >= 2 => Some(fh.group.clone()),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("fan is not smooth and complete: {}", .0.summary())]
    NotSmoothProper(Box<ValidationReport>),
    #[error(transparent)]
    Cox(#[from] CoxError),
}

pub mod notes {
    pub const CONNECTED: &str =
        "[connected] smooth proper toric varieties are covered by affine-space charts, hence A1-connected";
    pub const COVER: &str = "[cover] A^{Sigma(1)} - Z is a Galois A1-covering of X with group the torus dual to Pic(X)";
    pub const TRANSFER: &str = "[transfer] the covering long exact sequence gives pi_i(X) = pi_i(cover) for i >= 2";
    pub const PAIRWISE: &str =
        "[abelian] codimension-d components meet pairwise in codimension >= d+2, so pi_{d-1}(cover) = KMW(d)^r";
    pub const SURJECTION: &str =
        "[surjection] some codimension-d components meet in codimension d+1; only a surjection pi_{d-1}(cover) -> KMW(d)^r is known";
    pub const EXTENSION: &str = "[extension] the extension class is not determined and can be non-trivial";
    pub const WEIGHT: &str =
        "[weight] the first higher group has weight d = codimension of Z; for P^n the covering A^{n+1}-0 -> P^n gives pi_n(P^n) = KMW(n+1), not KMW(n)";
    pub const INDEXING: &str =
        "[indexing] d is the size of the smallest non-face; hypotheses stated with (d-1)- and (d-2)-subsets elsewhere correspond to d- and (d-1)-subsets here";
    pub const MIXED: &str =
        "[mixed] Z also has components of codimension > d; they do not change pi_i for i <= d-1 (excision)";
    pub const AFFINE: &str =
        "[affine] the Cox cover is affine space: X is a torus quotient of A^N and higher groups are not applicable";
}

fn looks_like_projective_space(fan: &Fan, arr: &SubspaceArrangement) -> bool {
    fan.num_rays() == fan.dim() + 1 && arr.components == vec![fan.all_rays()]
}

/// Full homotopy report for a smooth complete fan.
pub fn analyze(fan: &Fan) -> Result<HomotopyReport, HomotopyError> {
    let validation = validate(fan);
    if !validation.is_smooth_complete() {
        return Err(HomotopyError::NotSmoothProper(Box::new(validation)));
    }
    let pic = picard_group(fan)?;
    let arr = arrangement(fan);
    let cover = cox_cover_homotopy(&arr);
    let torus = GroupExpr::torus(pic.rank as u32);

    let mut notes = vec![notes::CONNECTED.to_string(), notes::COVER.to_string()];
    let variety = fan.provenance().unwrap_or("unnamed").to_string();
    let cox = CoxSummary {
        ambient: arr.ambient,
        d: cover.d,
        r: cover.r,
        pairwise_ok: cover.pairwise_ok,
    };

    let Some(d) = cover.d else {
        notes.push(notes::AFFINE.to_string());
        return Ok(HomotopyReport {
            variety,
            connected: true,
            cox,
            pi1: torus,
            vanishing: None,
            first_higher: None,
            notes,
            pic_rank: pic.rank,
            provenance: fan.provenance().map(str::to_string),
            version: VERSION.to_string(),
        });
    };
    assert!(d >= 2, "every ray of a complete fan spans a cone");

    let pi1 = if d == 2 {
        if cover.pairwise_ok {
            GroupExpr::extension(cover.first.clone(), torus)
        } else {
            GroupExpr::partial(torus)
        }
    } else {
        torus
    };

    if !arr.is_equicodimensional() {
        notes.push(notes::MIXED.to_string());
    }
    notes.push(
        if cover.pairwise_ok {
            notes::PAIRWISE
        } else {
            notes::SURJECTION
        }
        .to_string(),
    );
    notes.push(notes::TRANSFER.to_string());
    if d >= 3 {
        notes.push(notes::INDEXING.to_string());
    }
    notes.push(notes::WEIGHT.to_string());
    if pi1.contains_extension() {
        notes.push(notes::EXTENSION.to_string());
    }
    if looks_like_projective_space(fan, &arr) {
        notes.push(format!(
            "[projective-space] {} rays in dimension {}: pi_1 = Gm and pi_{} = KMW({})",
            fan.num_rays(),
            fan.dim(),
            d - 1,
            d
        ));
    }

    Ok(HomotopyReport {
        variety,
        connected: true,
        cox,
        pi1,
        vanishing: Some([2, d - 2]),
        first_higher: Some(FirstHigher {
            degree: d - 1,
            group: cover.first,
        }),
        notes,
        pic_rank: pic.rank,
        provenance: fan.provenance().map(str::to_string),
        version: VERSION.to_string(),
    })
}

/// π_1 of the Kleinschmidt variety with parameters `r = len(a)` and
/// `s = d - r + 1`, in closed form.
pub fn kleinschmidt_case(r: usize, s: usize) -> GroupExpr {
    assert!(r >= 1 && s >= 2, "kleinschmidt_case needs r >= 1 and s >= 2");
    let torus = GroupExpr::torus(2);
    match (r == 1, s == 2) {
        (false, false) => torus,
        (true, true) => GroupExpr::extension(GroupExpr::mw(2, 2), torus),
        _ => GroupExpr::extension(GroupExpr::mw(2, 1), torus),
    }
}
