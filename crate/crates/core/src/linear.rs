//! Linear assemblies: the explicit sign sequence plus `(τ, □)` link pairs.
//!
//! Text format, one field per line, indices 1-based and links sorted:
//!
//! ```text
//! signs: tau not not not in tau not not in box box box
//! links: (1 11) (1 12) (6 10)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{Assembly, AssemblyError, Classification, Node, RelSign, Sign};

/// A `(τ index, □ index)` pair, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Link {
    pub tau: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("empty sign sequence")]
    Empty,
    #[error("sign {index}: operator is missing arguments")]
    ArityUnderflow { index: usize },
    #[error("sign {index}: trailing signs after a complete assembly")]
    ArityOverflow { index: usize },
    #[error("sign {index}: square without a link")]
    DanglingBox { index: usize },
    #[error("sign {index}: link source is not a tau")]
    LinkSourceNotTau { index: usize },
    #[error("sign {index}: link target is not a square")]
    LinkTargetNotBox { index: usize },
    #[error("sign {index}: link index out of range")]
    LinkOutOfRange { index: usize },
    #[error("sign {index}: square has more than one link")]
    DuplicateLink { index: usize },
    #[error("sign {index}: square is linked to a tau that does not enclose it")]
    CrossingScope { index: usize },
    #[error("malformed linear assembly text: {0}")]
    Syntax(String),
    #[error(transparent)]
    Sign(#[from] AssemblyError),
}

impl LinearError {
    /// The 1-based sign index the error points at, when there is one.
    pub fn index(&self) -> Option<usize> {
        match self {
            LinearError::ArityUnderflow { index }
            | LinearError::ArityOverflow { index }
            | LinearError::DanglingBox { index }
            | LinearError::LinkSourceNotTau { index }
            | LinearError::LinkTargetNotBox { index }
            | LinearError::LinkOutOfRange { index }
            | LinearError::DuplicateLink { index }
            | LinearError::CrossingScope { index } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearAssembly {
    signs: Vec<Sign>,
    links: Vec<Link>,
}

impl LinearAssembly {
    /// Links are sorted on construction; no other validation happens here.
    pub fn new(signs: Vec<Sign>, mut links: Vec<Link>) -> Self {
        links.sort();
        LinearAssembly { signs, links }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs_text(&self) -> String {
        let tokens: Vec<&str> = self.signs.iter().map(Sign::token).collect();
        tokens.join(" ")
    }

    /// Juxtaposition `AB` of two words, links of `other` shifted along.
    pub fn concat(&self, other: &LinearAssembly) -> LinearAssembly {
        let shift = self.signs.len();
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().cloned());
        let mut links = self.links.clone();
        links.extend(other.links.iter().map(|l| Link {
            tau: l.tau + shift,
            target: l.target + shift,
        }));
        LinearAssembly::new(signs, links)
    }

    /// True iff arity parsing consumes the signs as exactly one tree.
    pub fn is_balanced(&self) -> bool {
        let mut need: usize = 1;
        for s in &self.signs {
            if need == 0 {
                return false;
            }
            need = need - 1 + s.arity();
        }
        need == 0
    }

    pub fn classify(&self) -> Classification {
        match delinearize(self) {
            Ok(a) => a.classify(),
            Err(_) => Classification::Neither,
        }
    }

    pub fn to_json(&self) -> LinearJson {
        LinearJson {
            signs: self.signs.iter().map(|s| s.token().to_string()).collect(),
            links: self.links.iter().map(|l| [l.tau, l.target]).collect(),
        }
    }

    pub fn from_json(json: &LinearJson) -> Result<Self, LinearError> {
        let signs = json
            .signs
            .iter()
            .map(|t| Sign::from_token(t))
            .collect::<Result<Vec<_>, _>>()?;
        let links = json.links.iter().map(|[tau, target]| Link { tau: *tau, target: *target }).collect();
        Ok(LinearAssembly::new(signs, links))
    }
}

/// Data-interchange mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearJson {
    pub signs: Vec<String>,
    pub links: Vec<[usize; 2]>,
}

impl fmt::Display for LinearAssembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "signs:")?;
        for s in &self.signs {
            write!(f, " {}", s.token())?;
        }
        write!(f, "\nlinks:")?;
        for l in &self.links {
            write!(f, " ({} {})", l.tau, l.target)?;
        }
        writeln!(f)
    }
}

impl FromStr for LinearAssembly {
    type Err = LinearError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut signs = None;
        let mut links = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("signs:") {
                if signs.is_some() {
                    return Err(LinearError::Syntax("duplicate `signs:` line".into()));
                }
                signs = Some(rest.split_whitespace().map(Sign::from_token).collect::<Result<Vec<_>, _>>()?);
            } else if let Some(rest) = line.strip_prefix("links:") {
                if links.is_some() {
                    return Err(LinearError::Syntax("duplicate `links:` line".into()));
                }
                links = Some(parse_links(rest)?);
            } else {
                return Err(LinearError::Syntax(format!("unexpected line `{line}`")));
            }
        }
        let signs = signs.ok_or_else(|| LinearError::Syntax("missing `signs:` line".into()))?;
        Ok(LinearAssembly::new(signs, links.unwrap_or_default()))
    }
}

fn parse_links(text: &str) -> Result<Vec<Link>, LinearError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')').map(|e| (r, e)))
            .ok_or_else(|| LinearError::Syntax(format!("expected `(i j)` at `{rest}`")))?;
        let (r, end) = inner_end;
        let nums: Vec<&str> = r[..end].split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| LinearError::Syntax(format!("bad link index `{s}`")))
        };
        if nums.len() != 2 {
            return Err(LinearError::Syntax(format!("expected two indices in `({})`", &r[..end])));
        }
        out.push(Link {
            tau: parse(nums[0])?,
            target: parse(nums[1])?,
        });
        rest = r[end + 1..].trim_start();
    }
    Ok(out)
}

/// A sign as seen during a streaming prefix walk.
#[derive(Debug, Clone, Copy)]
pub(crate) enum SignRef<'a> {
    Tau,
    /// Square linked to the `τ` at this 1-based position.
    Box(usize),
    Not,
    Or,
    Rel(RelSign),
    Letter(&'a crate::assembly::Letter),
}

/// Walk the prefix linearization of `a` without storing it. `visit` gets the
/// 1-based position of each sign and returns `false` to stop early; the walk
/// returns `false` iff it was stopped.
pub(crate) fn for_each_sign<'a>(a: &'a Assembly, visit: &mut dyn FnMut(usize, SignRef<'a>) -> bool) -> bool {
    let mut taus = Vec::new();
    let mut pos = 0;
    walk(a, &mut taus, &mut pos, visit)
}

fn walk<'a>(
    a: &'a Assembly,
    taus: &mut Vec<usize>,
    pos: &mut usize,
    visit: &mut dyn FnMut(usize, SignRef<'a>) -> bool,
) -> bool {
    *pos += 1;
    let here = *pos;
    match a.node() {
        Node::Letter(l) => visit(here, SignRef::Letter(l)),
        Node::Bound(d) => {
            let binder = taus[taus.len() - *d as usize];
            visit(here, SignRef::Box(binder))
        }
        Node::Not(b) => visit(here, SignRef::Not) && walk(b, taus, pos, visit),
        Node::Or(l, r) => visit(here, SignRef::Or) && walk(l, taus, pos, visit) && walk(r, taus, pos, visit),
        Node::Rel(s, l, r) => visit(here, SignRef::Rel(*s)) && walk(l, taus, pos, visit) && walk(r, taus, pos, visit),
        Node::Tau(b) => {
            if !visit(here, SignRef::Tau) {
                return false;
            }
            taus.push(here);
            let ok = walk(b, taus, pos, visit);
            taus.pop();
            ok
        }
    }
}

pub fn linearize(a: &Assembly) -> LinearAssembly {
    linearize_bounded(a, usize::MAX).expect("unbounded linearization")
}

/// Linearize, giving up with `None` once more than `budget` signs were
/// produced.
pub fn linearize_bounded(a: &Assembly, budget: usize) -> Option<LinearAssembly> {
    let mut signs = Vec::new();
    let mut links = Vec::new();
    let complete = for_each_sign(a, &mut |pos, s| {
        if pos > budget {
            return false;
        }
        signs.push(match s {
            SignRef::Tau => Sign::Tau,
            SignRef::Box(binder) => {
                links.push(Link { tau: binder, target: pos });
                Sign::Box
            }
            SignRef::Not => Sign::Not,
            SignRef::Or => Sign::Or,
            SignRef::Rel(RelSign::Eq) => Sign::Eq,
            SignRef::Rel(RelSign::In) => Sign::In,
            SignRef::Letter(l) => Sign::Letter(l.clone()),
        });
        true
    });
    complete.then(|| LinearAssembly::new(signs, links))
}

enum Pending {
    Tau,
    Not,
    Or(Option<Assembly>),
    Rel(RelSign, Option<Assembly>),
}

struct Frame {
    pos: usize,
    op: Pending,
}

/// Inverse of [`linearize`]. Rejects anything that is not exactly one tree
/// with well-scoped links.
pub fn delinearize(lin: &LinearAssembly) -> Result<Assembly, LinearError> {
    let n = lin.signs.len();
    if n == 0 {
        return Err(LinearError::Empty);
    }
    let mut binder_of = vec![0usize; n + 1];
    for link in &lin.links {
        for idx in [link.tau, link.target] {
            if idx == 0 || idx > n {
                return Err(LinearError::LinkOutOfRange { index: idx });
            }
        }
        if lin.signs[link.tau - 1] != Sign::Tau {
            return Err(LinearError::LinkSourceNotTau { index: link.tau });
        }
        if lin.signs[link.target - 1] != Sign::Box {
            return Err(LinearError::LinkTargetNotBox { index: link.target });
        }
        if binder_of[link.target] != 0 {
            return Err(LinearError::DuplicateLink { index: link.target });
        }
        binder_of[link.target] = link.tau;
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut taus: Vec<usize> = Vec::new();
    let mut root: Option<Assembly> = None;

    for (i, sign) in lin.signs.iter().enumerate() {
        let pos = i + 1;
        if root.is_some() {
            return Err(LinearError::ArityOverflow { index: pos });
        }
        let mut done = match sign {
            Sign::Tau => {
                taus.push(pos);
                stack.push(Frame { pos, op: Pending::Tau });
                continue;
            }
            Sign::Not => {
                stack.push(Frame { pos, op: Pending::Not });
                continue;
            }
            Sign::Or => {
                stack.push(Frame { pos, op: Pending::Or(None) });
                continue;
            }
            Sign::Eq | Sign::In => {
                let rel = if *sign == Sign::Eq { RelSign::Eq } else { RelSign::In };
                stack.push(Frame {
                    pos,
                    op: Pending::Rel(rel, None),
                });
                continue;
            }
            Sign::Letter(l) => Assembly::letter(l.clone()),
            Sign::Box => {
                let binder = binder_of[pos];
                if binder == 0 {
                    return Err(LinearError::DanglingBox { index: pos });
                }
                match taus.iter().rposition(|&t| t == binder) {
                    Some(k) => Assembly::bound((taus.len() - k) as u32),
                    None => return Err(LinearError::CrossingScope { index: pos }),
                }
            }
        };
        // attach the finished subtree, folding completed frames upward
        loop {
            let Some(mut frame) = stack.pop() else {
                root = Some(done);
                break;
            };
            match frame.op {
                Pending::Tau => {
                    taus.pop();
                    done = Assembly::tau_raw(done);
                }
                Pending::Not => done = Assembly::not(done),
                Pending::Or(None) => {
                    frame.op = Pending::Or(Some(done));
                    stack.push(frame);
                    break;
                }
                Pending::Or(Some(left)) => done = Assembly::or(left, done),
                Pending::Rel(s, None) => {
                    frame.op = Pending::Rel(s, Some(done));
                    stack.push(frame);
                    break;
                }
                Pending::Rel(s, Some(left)) => done = Assembly::rel(s, left, done),
            }
        }
    }
    match stack.last() {
        Some(frame) => Err(LinearError::ArityUnderflow { index: frame.pos }),
        None => Ok(root.expect("nonempty input yields a root")),
    }
}
