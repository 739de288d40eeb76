//! Presentations `(I, J, K)` of subvarieties of Wajsberg hoops, the
//! quasivarieties `Q[I, J]` generated by `Ł_i` and `Ł_{j,1}`, and the
//! order-theoretic questions about them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::ChainDescriptor;
use crate::scalar::divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("cannot parse presentation `{0}`")]
    Parse(String),
    #[error("presentation has no generators")]
    Empty,
    #[error("presentation {0} is not reduced")]
    NotReduced(String),
}

/// The triple `(I, J, K)`; `omega` records `K = {ω}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub i: BTreeSet<u64>,
    pub j: BTreeSet<u64>,
    pub omega: bool,
}

/// Every divisor of every element of `set`.
pub fn down(set: &BTreeSet<u64>) -> BTreeSet<u64> {
    set.iter().flat_map(|&n| divisors(n)).collect()
}

impl Presentation {
    pub fn new(
        i: impl IntoIterator<Item = u64>,
        j: impl IntoIterator<Item = u64>,
        omega: bool,
    ) -> Self {
        Presentation {
            i: i.into_iter().collect(),
            j: j.into_iter().collect(),
            omega,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty() && self.j.is_empty() && !self.omega
    }

    pub fn i_down(&self) -> BTreeSet<u64> {
        down(&self.i)
    }

    pub fn j_down(&self) -> BTreeSet<u64> {
        down(&self.j)
    }

    /// `(I ∪ J)↓`, the ranks of the finite chains in the variety.
    pub fn ij_down(&self) -> BTreeSet<u64> {
        self.i.union(&self.j).flat_map(|&n| divisors(n)).collect()
    }

    pub fn is_reduced(&self) -> bool {
        if self.is_empty() || (!self.j.is_empty() && self.omega) {
            return false;
        }
        let i_ok = self.i.iter().all(|&m| {
            self.i
                .iter()
                .chain(&self.j)
                .filter(|&&m2| m2 != m || self.j.contains(&m))
                .all(|&m2| m2 % m != 0)
        });
        let j_ok = self
            .j
            .iter()
            .all(|&n| self.j.iter().filter(|&&n2| n2 != n).all(|&n2| n2 % n != 0));
        i_ok && j_ok
    }

    /// The reduced presentation of the same variety.
    pub fn reduce(&self) -> Result<Presentation, PresentationError> {
        if self.is_empty() || self.i.contains(&0) || self.j.contains(&0) {
            return Err(PresentationError::Empty);
        }
        let j: BTreeSet<u64> = self
            .j
            .iter()
            .copied()
            .filter(|&n| !self.j.iter().any(|&n2| n2 != n && n2 % n == 0))
            .collect();
        let i: BTreeSet<u64> = self
            .i
            .iter()
            .copied()
            .filter(|&m| {
                let above_in_i = self.i.iter().any(|&m2| m2 != m && m2 % m == 0);
                let above_in_j = j.iter().any(|&n| n % m == 0);
                !above_in_i && !above_in_j
            })
            .collect();
        let omega = self.omega && j.is_empty();
        Ok(Presentation { i, j, omega })
    }

    pub fn require_reduced(&self) -> Result<(), PresentationError> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(PresentationError::NotReduced(self.to_string()))
        }
    }

    /// The generating chains `K_P`: `Ł_i`, `Ł_j^∞` and, for `K = {ω}`, `C_ω`.
    pub fn generators(&self) -> Vec<ChainDescriptor> {
        let mut out: Vec<ChainDescriptor> = self.i.iter().map(|&n| ChainDescriptor::Fin(n)).collect();
        out.extend(self.j.iter().map(|&n| ChainDescriptor::Lex(n, 0)));
        if self.omega {
            out.push(ChainDescriptor::NegCone);
        }
        out
    }

    pub fn is_locally_finite(&self) -> bool {
        self.j.is_empty() && !self.omega
    }

    /// Label used in lattice drawings, e.g. `V(2;∅;ω)`.
    pub fn label(&self) -> String {
        fn part(s: &BTreeSet<u64>) -> String {
            if s.is_empty() {
                "∅".into()
            } else {
                s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            }
        }
        let k = if self.omega { "ω" } else { "∅" };
        format!("V({};{};{})", part(&self.i), part(&self.j), k)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "I={}; J={}; K={}",
            join(&self.i),
            join(&self.j),
            if self.omega { "omega" } else { "" }
        )
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Parses `I=2,3; J=5; K=omega`; every part is optional.
    fn from_str(s: &str) -> Result<Self, PresentationError> {
        let bad = || PresentationError::Parse(s.to_string());
        let mut p = Presentation::default();
        let mut seen = BTreeSet::new();
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let key = key.trim().to_ascii_uppercase();
            if !seen.insert(key.clone()) {
                return Err(bad());
            }
            let value = value.trim();
            match key.as_str() {
                "I" | "J" => {
                    let set = value
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<u64>().ok().filter(|&n| n >= 1).ok_or_else(bad))
                        .collect::<Result<BTreeSet<u64>, _>>()?;
                    if key == "I" {
                        p.i = set;
                    } else {
                        p.j = set;
                    }
                }
                "K" => {
                    p.omega = match value {
                        "" => false,
                        "omega" | "ω" | "w" => true,
                        _ => return Err(bad()),
                    }
                }
                _ => return Err(bad()),
            }
        }
        Ok(p)
    }
}

/// Whether the chain `d` lies in `V(P)`.
pub fn variety_member(d: ChainDescriptor, p: &Presentation) -> bool {
    match d {
        ChainDescriptor::Fin(n) => p.ij_down().contains(&n),
        // an infinite chain has to come from an infinite generator
        ChainDescriptor::Lex(n, _) => p.j_down().contains(&n),
        ChainDescriptor::NegCone => !p.j.is_empty() || p.omega,
    }
}

/// `V(P) ⊆ V(P′)`: every generator of `P` is a member of `V(P′)`.
pub fn variety_leq(p: &Presentation, q: &Presentation) -> bool {
    p.generators().into_iter().all(|d| variety_member(d, q))
}

/// Structural (equivalently primitive) varieties are exactly those with
/// `J = ∅` or `J = {1}`.
pub fn is_structural_variety(p: &Presentation) -> bool {
    p.j.is_empty() || (p.j.len() == 1 && p.j.contains(&1))
}

/// The quasivariety `Q[I, J]` generated by `{Ł_i : i ∈ I} ∪ {Ł_{j,1} : j ∈ J}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bracket {
    pub i: BTreeSet<u64>,
    pub j: BTreeSet<u64>,
}

impl Bracket {
    pub fn new(i: impl IntoIterator<Item = u64>, j: impl IntoIterator<Item = u64>) -> Self {
        Bracket {
            i: i.into_iter().collect(),
            j: j.into_iter().collect(),
        }
    }

    pub fn generators(&self) -> Vec<ChainDescriptor> {
        let mut out: Vec<ChainDescriptor> = self.i.iter().map(|&n| ChainDescriptor::Fin(n)).collect();
        out.extend(self.j.iter().map(|&n| ChainDescriptor::Lex(n, 1)));
        out
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "Q[{{{}}},{{{}}}]", join(&self.i), join(&self.j))
    }
}

/// A quasivariety named by its generating chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuasiDescriptor {
    /// The variety `V(P)`, viewed as the quasivariety generated by `K_P`.
    Generated(Presentation),
    Bracket(Bracket),
}

impl QuasiDescriptor {
    pub fn generators(&self) -> Vec<ChainDescriptor> {
        match self {
            QuasiDescriptor::Generated(p) => p.generators(),
            QuasiDescriptor::Bracket(b) => b.generators(),
        }
    }
}

impl fmt::Display for QuasiDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiDescriptor::Generated(p) => write!(f, "Q({})", p.label()),
            QuasiDescriptor::Bracket(b) => write!(f, "{b}"),
        }
    }
}

/// Least structural quasivariety generating `V(P)`.
pub fn structural_core(p: &Presentation) -> QuasiDescriptor {
    if p.omega || p.j.is_empty() {
        QuasiDescriptor::Generated(p.clone())
    } else {
        QuasiDescriptor::Bracket(Bracket {
            i: p.i.clone(),
            j: p.j.clone(),
        })
    }
}

/// `Q[I, J] ⊆ Q[I′, J′]`: each `i ∈ I` other than 1 divides some `i′ ∈ I′`
/// and each `j ∈ J` divides some `j′ ∈ J′`.
pub fn quasi_leq(q: &Bracket, r: &Bracket) -> bool {
    let i_ok = q
        .i
        .iter()
        .filter(|&&i| i != 1)
        .all(|&i| r.i.iter().any(|&i2| i2 % i == 0));
    let j_ok = q.j.iter().all(|&j| r.j.iter().any(|&j2| j2 % j == 0));
    i_ok && j_ok
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primitivity {
    Primitive(String),
    NotPrimitive(String),
    Unknown,
}

impl fmt::Display for Primitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitivity::Primitive(r) => write!(f, "primitive ({r})"),
            Primitivity::NotPrimitive(r) => write!(f, "not primitive ({r})"),
            Primitivity::Unknown => f.write_str("unknown"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Decides primitivity where a known criterion applies.
pub fn primitivity(q: &QuasiDescriptor) -> Primitivity {
    use Primitivity::*;
    match q {
        QuasiDescriptor::Generated(p) => {
            if p.is_locally_finite() {
                Primitive("locally finite".into())
            } else if is_structural_variety(p) {
                Primitive("structural variety".into())
            } else {
                NotPrimitive("variety that is not structural".into())
            }
        }
        QuasiDescriptor::Bracket(b) => {
            let one: BTreeSet<u64> = [1].into();
            if b.j.is_empty() {
                return Primitive("locally finite".into());
            }
            if b.j == one {
                return Primitive("equals the structural variety with J = {1}".into());
            }
            if b.i.is_empty() && b.j.len() == 1 {
                let p = *b.j.iter().next().unwrap();
                if is_prime(p) {
                    return Primitive(format!("generated by L({p},1) with {p} prime"));
                }
            }
            let common: BTreeSet<u64> = down(&b.i).intersection(&down(&b.j)).copied().collect();
            if common.len() > 1 {
                let shared = common.iter().find(|&&d| d != 1).unwrap();
                return NotPrimitive(format!("{shared} divides elements of both I and J"));
            }
            Unknown
        }
    }
}

/// Every reduced presentation with all entries in `1..=max`.
pub fn enumerate_reduced(max: u64) -> Vec<Presentation> {
    let universe: Vec<u64> = (1..=max).collect();
    let antichains = antichains(&universe);
    let mut out = Vec::new();
    for i in &antichains {
        for j in &antichains {
            for omega in [false, true] {
                let p = Presentation {
                    i: i.clone(),
                    j: j.clone(),
                    omega,
                };
                if p.is_reduced() {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out
}

/// Subsets of `universe` in which no element divides another.
fn antichains(universe: &[u64]) -> Vec<BTreeSet<u64>> {
    let mut out = vec![BTreeSet::new()];
    for &x in universe {
        let extended: Vec<BTreeSet<u64>> = out
            .iter()
            .filter(|s| s.iter().all(|&y| x % y != 0 && y % x != 0))
            .map(|s| {
                let mut s = s.clone();
                s.insert(x);
                s
            })
            .collect();
        out.extend(extended);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarietyNode {
    Trivial,
    Variety(Presentation),
}

impl VarietyNode {
    pub fn label(&self) -> String {
        match self {
            VarietyNode::Trivial => "0".into(),
            VarietyNode::Variety(p) => p.label(),
        }
    }

    fn leq(&self, other: &VarietyNode) -> bool {
        match (self, other) {
            (VarietyNode::Trivial, _) => true,
            (_, VarietyNode::Trivial) => false,
            (VarietyNode::Variety(p), VarietyNode::Variety(q)) => variety_leq(p, q),
        }
    }
}

/// Subvarieties of a variety with the covering relation, as `(lower, upper)`
/// index pairs into `nodes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub nodes: Vec<VarietyNode>,
    pub covers: Vec<(usize, usize)>,
}

impl Lattice {
    pub fn index_of(&self, node: &VarietyNode) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph subvarieties {\n  rankdir=BT;\n");
        for (k, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{k} [label=\"{}\"];\n", n.label()));
        }
        for (a, b) in &self.covers {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// All subvarieties of `V(P)` ordered by inclusion, trivial variety at the
/// bottom.
pub fn subvariety_lattice(p: &Presentation) -> Result<Lattice, PresentationError> {
    p.require_reduced()?;
    let finite: Vec<u64> = p.ij_down().into_iter().collect();
    let infinite: Vec<u64> = p.j_down().into_iter().collect();
    let cancellative = !p.j.is_empty() || p.omega;
    let mut varieties = Vec::new();
    for i in antichains(&finite) {
        for j in antichains(&infinite) {
            for omega in [false, true] {
                if omega && !cancellative {
                    continue;
                }
                let q = Presentation {
                    i: i.clone(),
                    j: j.clone(),
                    omega,
                };
                if q.is_reduced() && variety_leq(&q, p) {
                    varieties.push(VarietyNode::Variety(q));
                }
            }
        }
    }
    varieties.push(VarietyNode::Trivial);
    let mut keyed: Vec<(usize, VarietyNode)> = varieties
        .iter()
        .map(|n| (varieties.iter().filter(|m| m.leq(n)).count(), n.clone()))
        .collect();
    keyed.sort();
    let nodes: Vec<VarietyNode> = keyed.into_iter().map(|(_, n)| n).collect();
    let mut covers = Vec::new();
    for (a, x) in nodes.iter().enumerate() {
        for (b, y) in nodes.iter().enumerate() {
            if a == b || !x.leq(y) {
                continue;
            }
            let between = nodes
                .iter()
                .enumerate()
                .any(|(c, z)| c != a && c != b && x.leq(z) && z.leq(y));
            if !between {
                covers.push((a, b));
            }
        }
    }
    Ok(Lattice { nodes, covers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::embeds;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_display() {
        let x = p("I=2,3; J=5; K=omega");
        assert_eq!(x, Presentation::new([2, 3], [5], true));
        assert_eq!(x.to_string(), "I=2,3; J=5; K=omega");
        assert_eq!(p("J=2"), Presentation::new([], [2], false));
        assert_eq!(p("K=omega"), Presentation::new([], [], true));
        assert!("I=0".parse::<Presentation>().is_err());
        assert!("I=2; I=3".parse::<Presentation>().is_err());
        assert!("L=2".parse::<Presentation>().is_err());
        assert_eq!(p("I=2;K=omega").label(), "V(2;∅;ω)");
    }

    #[test]
    fn reducedness() {
        assert!(p("I=2,3").is_reduced());
        assert!(!p("I=2; J=4").is_reduced());
        assert!(!p("I=2; J=3; K=omega").is_reduced());
        assert!(!p("I=2; J=2").is_reduced());
        assert!(!p("J=2,4").is_reduced());
        assert!(p("I=4; J=2").is_reduced());
        assert!(!p("").is_reduced());
    }

    #[test]
    fn reduction() {
        assert_eq!(p("I=2,4").reduce().unwrap(), p("I=4"));
        assert_eq!(p("I=2; J=2").reduce().unwrap(), p("J=2"));
        assert_eq!(p("I=3; J=1; K=omega").reduce().unwrap(), p("I=3; J=1"));
        assert_eq!(p("").reduce(), Err(PresentationError::Empty));
    }

    #[test]
    fn membership() {
        assert!(variety_member(ChainDescriptor::Fin(3), &p("I=6")));
        assert!(!variety_member(ChainDescriptor::Lex(2, 1), &p("I=2")));
        assert!(variety_member(ChainDescriptor::NegCone, &p("J=2")));
        assert!(!variety_member(ChainDescriptor::Lex(2, 0), &p("I=2; J=1")));
    }

    #[test]
    fn ordering_examples() {
        assert!(variety_leq(&p("J=1"), &p("J=2")));
        assert!(!variety_leq(&p("I=2; K=omega"), &p("J=1")));
        assert!(!variety_leq(&p("J=1"), &p("I=2; K=omega")));
        assert!(variety_leq(&p("I=2; J=1"), &p("I=2; J=1")));
    }

    #[test]
    fn structurality_and_cores() {
        assert!(is_structural_variety(&p("I=2,3")));
        assert!(is_structural_variety(&p("I=2; J=1")));
        assert!(!is_structural_variety(&p("J=2")));
        assert_eq!(
            structural_core(&p("J=2")),
            QuasiDescriptor::Bracket(Bracket::new([], [2]))
        );
        assert_eq!(
            structural_core(&p("I=2; K=omega")),
            QuasiDescriptor::Generated(p("I=2; K=omega"))
        );
        assert_eq!(
            structural_core(&p("I=2; J=1")),
            QuasiDescriptor::Bracket(Bracket::new([2], [1]))
        );
    }

    #[test]
    fn quasi_order_examples() {
        assert!(quasi_leq(&Bracket::new([2], []), &Bracket::new([4], [])));
        assert!(quasi_leq(&Bracket::new([], [2]), &Bracket::new([2], [2])));
        assert!(!quasi_leq(&Bracket::new([2], [2]), &Bracket::new([], [2])));
        assert!(quasi_leq(&Bracket::new([1], []), &Bracket::new([], [3])));
    }

    #[test]
    fn primitivity_examples() {
        let gen = |s: &str| QuasiDescriptor::Generated(p(s));
        let br = |i: &[u64], j: &[u64]| QuasiDescriptor::Bracket(Bracket::new(i.to_vec(), j.to_vec()));
        assert!(matches!(primitivity(&gen("I=2,3")), Primitivity::Primitive(_)));
        assert!(matches!(primitivity(&br(&[2], &[2])), Primitivity::NotPrimitive(_)));
        assert_eq!(primitivity(&br(&[], &[2, 3])), Primitivity::Unknown);
        assert!(matches!(primitivity(&br(&[], &[5])), Primitivity::Primitive(_)));
        assert!(matches!(primitivity(&br(&[3], &[1])), Primitivity::Primitive(_)));
        assert!(matches!(primitivity(&gen("J=2")), Primitivity::NotPrimitive(_)));
        assert_eq!(primitivity(&br(&[], &[4])), Primitivity::Unknown);
    }

    #[test]
    fn small_lattices() {
        let l = subvariety_lattice(&p("I=1")).unwrap();
        assert_eq!(l.nodes.len(), 2);
        assert_eq!(l.covers, vec![(0, 1)]);
        let l = subvariety_lattice(&p("I=2")).unwrap();
        assert_eq!(l.nodes.len(), 3);
        assert_eq!(l.covers, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn lattice_below_lex_two_has_nine_nodes() {
        // V(2;1;∅) is generated by Ł_2 and Ł_1^∞ and sits strictly between
        // its two coatom neighbours and the top
        let l = subvariety_lattice(&p("J=2")).unwrap();
        assert_eq!(l.nodes.len(), 9);
        let top = l.index_of(&VarietyNode::Variety(p("J=2"))).unwrap();
        let mid = l.index_of(&VarietyNode::Variety(p("I=2; J=1"))).unwrap();
        assert_eq!(l.covers.iter().filter(|&&(_, b)| b == top).count(), 1);
        assert!(l.covers.contains(&(mid, top)));
        assert!(!embeds(ChainDescriptor::Lex(2, 0), ChainDescriptor::Fin(2)));
        assert!(!variety_leq(&p("J=2"), &p("I=2; J=1")));
        assert!(l.to_dot().contains("label=\"V(2;1;∅)\""));
    }

    #[test]
    fn enumeration_counts() {
        assert!(enumerate_reduced(6).iter().all(Presentation::is_reduced));
        // entries ≤ 2: I,J antichains of {1,2} are ∅,{1},{2}
        let two = enumerate_reduced(2);
        let brute: Vec<_> = (0..3)
            .flat_map(|a| (0..3).flat_map(move |b| [false, true].map(move |o| (a, b, o))))
            .map(|(a, b, o)| {
                let s = |k| match k {
                    0 => vec![],
                    1 => vec![1],
                    _ => vec![2],
                };
                Presentation::new(s(a), s(b), o)
            })
            .filter(Presentation::is_reduced)
            .collect();
        assert_eq!(two.len(), brute.len());
    }
}
