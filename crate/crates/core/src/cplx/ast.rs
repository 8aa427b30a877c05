use super::types::PotTy;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Shared pointer to a complexity expression. Translated terms are DAGs:
/// the cons and case clauses mention a subterm's translation twice, and the
/// shared node is stored once.
pub type CRef = Arc<CplxExpr>;

/// Complexity-language expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CplxExpr {
    Var(String),
    Nat(u64),
    Plus(CRef, CRef),
    Max(CRef, CRef),
    Pair(CRef, CRef),
    /// First projection, written `e_c`.
    Cost(CRef),
    /// Second projection, written `e_p`.
    Pot(CRef),
    /// `λ* x:γ. e`; `x` ranges over complexities `N×γ`.
    Lam {
        binder: String,
        ty: PotTy,
        body: CRef,
    },
    /// Star application `r * s`.
    App(CRef, CRef),
    PCase {
        scrutinee: CRef,
        zero: CRef,
        p: String,
        ps: String,
        succ: CRef,
    },
    PFold {
        scrutinee: CRef,
        zero: CRef,
        p: String,
        ps: String,
        w: String,
        succ: CRef,
    },
    /// `dally(n, e)`, a derived form for `(n + e_c, e_p)`.
    Dally(CRef, CRef),
}

use CplxExpr as C;

pub fn var(name: impl Into<String>) -> CRef {
    Arc::new(C::Var(name.into()))
}

pub fn nat(n: u64) -> CRef {
    Arc::new(C::Nat(n))
}

pub fn plus(a: CRef, b: CRef) -> CRef {
    Arc::new(C::Plus(a, b))
}

/// Left-nested sum of the given terms; `0` when empty.
pub fn sum(terms: impl IntoIterator<Item = CRef>) -> CRef {
    terms.into_iter().reduce(plus).unwrap_or_else(|| nat(0))
}

pub fn max(a: CRef, b: CRef) -> CRef {
    Arc::new(C::Max(a, b))
}

pub fn pair(a: CRef, b: CRef) -> CRef {
    Arc::new(C::Pair(a, b))
}

pub fn cost(e: CRef) -> CRef {
    Arc::new(C::Cost(e))
}

pub fn pot(e: CRef) -> CRef {
    Arc::new(C::Pot(e))
}

pub fn lam(binder: impl Into<String>, ty: PotTy, body: CRef) -> CRef {
    Arc::new(C::Lam {
        binder: binder.into(),
        ty,
        body,
    })
}

pub fn app(f: CRef, a: CRef) -> CRef {
    Arc::new(C::App(f, a))
}

pub fn dally(n: CRef, e: CRef) -> CRef {
    Arc::new(C::Dally(n, e))
}

pub fn pcase(
    scrutinee: CRef,
    zero: CRef,
    p: impl Into<String>,
    ps: impl Into<String>,
    succ: CRef,
) -> CRef {
    Arc::new(C::PCase {
        scrutinee,
        zero,
        p: p.into(),
        ps: ps.into(),
        succ,
    })
}

pub fn pfold(
    scrutinee: CRef,
    zero: CRef,
    p: impl Into<String>,
    ps: impl Into<String>,
    w: impl Into<String>,
    succ: CRef,
) -> CRef {
    Arc::new(C::PFold {
        scrutinee,
        zero,
        p: p.into(),
        ps: ps.into(),
        w: w.into(),
        succ,
    })
}

impl CplxExpr {
    /// Direct subterms paired with the binders in scope for each.
    pub fn children(&self) -> Vec<(&CRef, Vec<&str>)> {
        match self {
            C::Var(_) | C::Nat(_) => vec![],
            C::Plus(a, b) | C::Max(a, b) | C::Pair(a, b) | C::App(a, b) | C::Dally(a, b) => {
                vec![(a, vec![]), (b, vec![])]
            }
            C::Cost(a) | C::Pot(a) => vec![(a, vec![])],
            C::Lam { binder, body, .. } => vec![(body, vec![binder.as_str()])],
            C::PCase {
                scrutinee,
                zero,
                p,
                ps,
                succ,
            } => vec![
                (scrutinee, vec![]),
                (zero, vec![]),
                (succ, vec![p.as_str(), ps.as_str()]),
            ],
            C::PFold {
                scrutinee,
                zero,
                p,
                ps,
                w,
                succ,
            } => vec![
                (scrutinee, vec![]),
                (zero, vec![]),
                (succ, vec![p.as_str(), ps.as_str(), w.as_str()]),
            ],
        }
    }

    pub fn free_vars(self: &CRef) -> BTreeSet<String> {
        (*FvCache::default().get(self)).clone()
    }

    /// Expands every `dally(n, e)` into `(n + e_c, e_p)`.
    pub fn desugar(self: &CRef) -> CRef {
        fn go(e: &CRef, memo: &mut HashMap<usize, CRef>) -> CRef {
            let key = Arc::as_ptr(e) as usize;
            if let Some(hit) = memo.get(&key) {
                return hit.clone();
            }
            let out = match &**e {
                C::Dally(n, x) => {
                    let x = go(x, memo);
                    pair(plus(go(n, memo), cost(x.clone())), pot(x))
                }
                _ => rebuild(e, |c| go(c, memo)),
            };
            memo.insert(key, out.clone());
            out
        }
        go(self, &mut HashMap::new())
    }

    /// Number of nodes when the DAG is unfolded into a tree, saturating.
    pub fn tree_size(self: &CRef) -> u64 {
        fn go(e: &CRef, memo: &mut HashMap<usize, u64>) -> u64 {
            let key = Arc::as_ptr(e) as usize;
            if let Some(&n) = memo.get(&key) {
                return n;
            }
            let n = e
                .children()
                .iter()
                .fold(1u64, |acc, (c, _)| acc.saturating_add(go(c, memo)));
            memo.insert(key, n);
            n
        }
        go(self, &mut HashMap::new())
    }

    /// Structural equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &CplxExpr) -> bool {
        alpha_eq(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

/// Rebuilds `e` with each child mapped through `f`, keeping binders.
pub(crate) fn rebuild(e: &CRef, mut f: impl FnMut(&CRef) -> CRef) -> CRef {
    match &**e {
        C::Var(_) | C::Nat(_) => e.clone(),
        C::Plus(a, b) => plus(f(a), f(b)),
        C::Max(a, b) => max(f(a), f(b)),
        C::Pair(a, b) => pair(f(a), f(b)),
        C::App(a, b) => app(f(a), f(b)),
        C::Dally(a, b) => dally(f(a), f(b)),
        C::Cost(a) => cost(f(a)),
        C::Pot(a) => pot(f(a)),
        C::Lam { binder, ty, body } => lam(binder.clone(), ty.clone(), f(body)),
        C::PCase {
            scrutinee,
            zero,
            p,
            ps,
            succ,
        } => pcase(f(scrutinee), f(zero), p.clone(), ps.clone(), f(succ)),
        C::PFold {
            scrutinee,
            zero,
            p,
            ps,
            w,
            succ,
        } => pfold(
            f(scrutinee),
            f(zero),
            p.clone(),
            ps.clone(),
            w.clone(),
            f(succ),
        ),
    }
}

/// Free-variable sets memoized by node address.
#[derive(Default)]
pub(crate) struct FvCache {
    memo: HashMap<usize, (CRef, Arc<BTreeSet<String>>)>,
}

impl FvCache {
    pub(crate) fn get(&mut self, e: &CRef) -> Arc<BTreeSet<String>> {
        let key = Arc::as_ptr(e) as usize;
        if let Some((_, fv)) = self.memo.get(&key) {
            return fv.clone();
        }
        let fv = match &**e {
            C::Var(x) => Arc::new(BTreeSet::from([x.clone()])),
            C::Nat(_) => Arc::new(BTreeSet::new()),
            _ => {
                let mut out = BTreeSet::new();
                for (child, binders) in e.children() {
                    let child_fv = self.get(child);
                    out.extend(
                        child_fv
                            .iter()
                            .filter(|x| !binders.contains(&x.as_str()))
                            .cloned(),
                    );
                }
                Arc::new(out)
            }
        };
        self.memo.insert(key, (e.clone(), fv.clone()));
        fv
    }
}

/// Simultaneous capture-avoiding substitution. Binders that would capture a
/// free variable of a replacement are renamed by appending primes.
pub fn subst(e: &CRef, bindings: &[(&str, CRef)]) -> CRef {
    let mut s = Substituter::default();
    let map = SubstMap {
        id: 0,
        entries: bindings
            .iter()
            .map(|(x, r)| (x.to_string(), r.clone()))
            .collect(),
    };
    s.next_id = 1;
    s.go(e, &map)
}

struct SubstMap {
    id: u64,
    entries: Vec<(String, CRef)>,
}

impl SubstMap {
    fn get(&self, x: &str) -> Option<&CRef> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, r)| r)
    }
}

#[derive(Default)]
struct Substituter {
    fv: FvCache,
    memo: HashMap<(usize, u64), CRef>,
    next_id: u64,
}

impl Substituter {
    fn go(&mut self, e: &CRef, map: &SubstMap) -> CRef {
        let fv = self.fv.get(e);
        if !map.entries.iter().any(|(x, _)| fv.contains(x)) {
            return e.clone();
        }
        let key = (Arc::as_ptr(e) as usize, map.id);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = match &**e {
            C::Var(x) => map.get(x).cloned().unwrap_or_else(|| e.clone()),
            C::Lam { binder, ty, body } => {
                let (names, inner) = self.under(&[binder], body, map);
                lam(names[0].clone(), ty.clone(), inner)
            }
            C::PCase {
                scrutinee,
                zero,
                p,
                ps,
                succ,
            } => {
                let scrutinee = self.go(scrutinee, map);
                let zero = self.go(zero, map);
                let (names, inner) = self.under(&[p, ps], succ, map);
                pcase(scrutinee, zero, names[0].clone(), names[1].clone(), inner)
            }
            C::PFold {
                scrutinee,
                zero,
                p,
                ps,
                w,
                succ,
            } => {
                let scrutinee = self.go(scrutinee, map);
                let zero = self.go(zero, map);
                let (names, inner) = self.under(&[p, ps, w], succ, map);
                pfold(
                    scrutinee,
                    zero,
                    names[0].clone(),
                    names[1].clone(),
                    names[2].clone(),
                    inner,
                )
            }
            _ => rebuild(e, |c| self.go(c, map)),
        };
        if Arc::strong_count(e) > 1 {
            self.memo.insert(key, out.clone());
        }
        out
    }

    /// Substitutes in `body` under `binders` (later binders shadow earlier
    /// ones), renaming any binder that would capture.
    fn under(&mut self, binders: &[&String], body: &CRef, map: &SubstMap) -> (Vec<String>, CRef) {
        let body_fv = self.fv.get(body);
        let mut entries: Vec<(String, CRef)> = map
            .entries
            .iter()
            .filter(|(x, _)| !binders.contains(&x) && body_fv.contains(x))
            .cloned()
            .collect();
        let mut avoid: BTreeSet<String> = body_fv.iter().cloned().collect();
        for (x, r) in &entries {
            avoid.insert(x.clone());
            avoid.extend(self.fv.get(r).iter().cloned());
        }
        avoid.extend(binders.iter().map(|b| b.to_string()));
        let captured: BTreeSet<String> = entries
            .iter()
            .flat_map(|(_, r)| self.fv.get(r).iter().cloned().collect::<Vec<_>>())
            .collect();
        let mut names = Vec::with_capacity(binders.len());
        for (i, b) in binders.iter().enumerate() {
            let shadowed = binders[i + 1..].contains(b);
            if !shadowed && !entries.is_empty() && captured.contains(b.as_str()) {
                let mut fresh = format!("{b}'");
                while avoid.contains(&fresh) {
                    fresh.push('\'');
                }
                avoid.insert(fresh.clone());
                entries.push((b.to_string(), var(fresh.clone())));
                names.push(fresh);
            } else {
                names.push(b.to_string());
            }
        }
        if entries.is_empty() {
            return (names, body.clone());
        }
        let inner = SubstMap {
            id: self.next_id,
            entries,
        };
        self.next_id += 1;
        (names, self.go(body, &inner))
    }
}

fn alpha_eq<'a>(
    a: &'a CplxExpr,
    b: &'a CplxExpr,
    left: &mut Vec<&'a str>,
    right: &mut Vec<&'a str>,
) -> bool {
    match (a, b) {
        (C::Var(x), C::Var(y)) => {
            let lx = left.iter().rposition(|n| *n == x);
            let ry = right.iter().rposition(|n| *n == y);
            match (lx, ry) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (C::Nat(x), C::Nat(y)) => x == y,
        (C::Lam { ty: t1, .. }, C::Lam { ty: t2, .. }) if t1 != t2 => false,
        _ if std::mem::discriminant(a) == std::mem::discriminant(b) => {
            let (ca, cb) = (a.children(), b.children());
            ca.iter().zip(cb.iter()).all(|((x, bx), (y, by))| {
                let (nl, nr) = (left.len(), right.len());
                left.extend(bx.iter().copied());
                right.extend(by.iter().copied());
                let eq = alpha_eq(x, y, left, right);
                left.truncate(nl);
                right.truncate(nr);
                eq
            })
        }
        _ => false,
    }
}
