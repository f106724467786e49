//! Brute-force reference implementations used to cross-check the library.
//!
//! None of these call the code they check: they work on indices, bitmasks and native
//! collections and only use the universe to intern their final answers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Result;
use crate::fixedpoint::{eval_op, MonoOp};
use crate::hf::{Set, Universe};
use crate::proplogic::{Prop, Valuation};
use crate::relations::Rel;

fn subset_of_mask(u: &mut Universe, items: &[Set], mask: u32) -> Set {
    let picked: Vec<Set> = (0..items.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| items[i])
        .collect();
    u.set_of(picked)
}

/// `⋂{X ∈ ℘(D). h(X) ⊆ X}`, computed over bitmasks of `D`.
pub fn lfp_by_intersection(u: &mut Universe, d: Set, h: &MonoOp) -> Result<Set> {
    let items = u.elems(d).to_vec();
    assert!(items.len() <= 16, "oracle domain too large");
    let index: HashMap<Set, usize> = items.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let full = (1u32 << items.len()) - 1;
    let mut meet = full;
    for mask in 0..=full {
        let x = subset_of_mask(u, &items, mask);
        let hx = eval_op(u, h, x)?;
        let mut hmask = 0u32;
        let mut inside = true;
        for e in u.elems(hx) {
            match index.get(e) {
                Some(&i) => hmask |= 1 << i,
                None => inside = false,
            }
        }
        if inside && hmask & !mask == 0 {
            meet &= mask;
        }
    }
    Ok(subset_of_mask(u, &items, meet))
}

/// All prefixedpoints `X ⊆ D` with `h(X) ⊆ X`.
pub fn prefixedpoints(u: &mut Universe, d: Set, h: &MonoOp) -> Result<Vec<Set>> {
    let items = u.elems(d).to_vec();
    assert!(items.len() <= 16, "oracle domain too large");
    let mut out = Vec::new();
    for mask in 0..1u32 << items.len() {
        let x = subset_of_mask(u, &items, mask);
        let hx = eval_op(u, h, x)?;
        if u.subset(hx, x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Field of `r` as a vector, with an index for each element.
fn indexed_field(u: &Universe, r: Rel) -> (Vec<Set>, HashMap<Set, usize>, Vec<(usize, usize)>) {
    let pairs = r.pairs(u);
    let field: BTreeSet<Set> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let field: Vec<Set> = field.into_iter().collect();
    let index: HashMap<Set, usize> = field.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let edges = pairs.iter().map(|(a, b)| (index[a], index[b])).collect();
    (field, index, edges)
}

/// Transitive closure (reflexive on the field when `reflexive`) by Warshall's algorithm.
pub fn warshall(u: &mut Universe, r: Rel, reflexive: bool) -> Set {
    let (field, _, edges) = indexed_field(u, r);
    let n = field.len();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in edges {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                let row = m[k].clone();
                for (cell, &via) in m[i].iter_mut().zip(&row) {
                    *cell |= via;
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] || (reflexive && i == j) {
                let (a, b) = (field[i], field[j]);
                pairs.push(u.pair(a, b));
            }
        }
    }
    u.set_of(pairs)
}

/// Well-foundedness straight from the definition: every nonempty `Z ⊆ field(r)` has an
/// `r`-minimal element. Exponential in the size of the field.
pub fn is_wf_by_subsets(u: &Universe, r: Rel) -> bool {
    let (field, _, edges) = indexed_field(u, r);
    let n = field.len();
    assert!(n <= 16, "oracle field too large");
    let mut below = vec![0u32; n];
    for (a, b) in edges {
        below[b] |= 1 << a;
    }
    (1..1u32 << n).all(|z| (0..n).any(|x| z >> x & 1 == 1 && below[x] & z == 0))
}

/// Whether the set of pairs `h` is a bijection from `x` onto `y`.
pub fn is_bijection(u: &Universe, h: Set, x: Set, y: Set) -> bool {
    let mut forward: BTreeMap<Set, Set> = BTreeMap::new();
    let mut backward: BTreeMap<Set, Set> = BTreeMap::new();
    for &p in u.elems(h) {
        let Some((a, b)) = u.as_pair(p) else {
            return false;
        };
        if forward.insert(a, b).is_some() || backward.insert(b, a).is_some() {
            return false;
        }
    }
    let xs: BTreeSet<Set> = u.elems(x).iter().copied().collect();
    let ys: BTreeSet<Set> = u.elems(y).iter().copied().collect();
    forward.keys().copied().collect::<BTreeSet<_>>() == xs
        && backward.keys().copied().collect::<BTreeSet<_>>() == ys
}

/// Values of a well-founded recursion whose body sees the argument and the values at its
/// `r`-predecessors, in the order of the predecessors. Computed by repeated sweeps over the
/// field: a value is filled once all of its predecessors have one.
pub fn wf_table(
    u: &mut Universe,
    r: Rel,
    extra: &[Set],
    body: &dyn Fn(&mut Universe, Set, &[(Set, Set)]) -> Set,
) -> HashMap<Set, Set> {
    let pairs = r.pairs(u);
    let mut nodes: BTreeSet<Set> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    nodes.extend(extra);
    let mut preds: BTreeMap<Set, Vec<Set>> = nodes.iter().map(|&x| (x, Vec::new())).collect();
    for &(a, b) in &pairs {
        preds.get_mut(&b).unwrap().push(a);
    }
    let mut table: HashMap<Set, Set> = HashMap::new();
    loop {
        let mut progress = false;
        for (&x, ps) in &preds {
            if table.contains_key(&x) || !ps.iter().all(|p| table.contains_key(p)) {
                continue;
            }
            let mut ps = ps.clone();
            ps.sort_by(|&a, &b| u.order(a, b));
            let vals: Vec<(Set, Set)> = ps.iter().map(|&p| (p, table[&p])).collect();
            let v = body(u, x, &vals);
            table.insert(x, v);
            progress = true;
        }
        if !progress {
            return table;
        }
    }
}

/// `nat_rec(a, b, n)` by a loop.
pub fn nat_rec_loop(
    u: &mut Universe,
    a: Set,
    b: &dyn Fn(&mut Universe, Set, Set) -> Set,
    n: u32,
) -> Set {
    let mut r = a;
    for m in 0..n {
        let m = u.nat(m);
        r = b(u, m, r);
    }
    r
}

/// Every proposition over atoms `0..nvars` with at most `max_conn` implications.
pub fn all_props(nvars: u32, max_conn: usize) -> Vec<Prop> {
    let mut by_size: Vec<Vec<Prop>> = Vec::with_capacity(max_conn + 1);
    let mut atoms = vec![Prop::Fls];
    atoms.extend((0..nvars).map(Prop::Var));
    by_size.push(atoms);
    for n in 1..=max_conn {
        let mut level = Vec::new();
        for i in 0..n {
            for a in &by_size[i] {
                for b in &by_size[n - 1 - i] {
                    level.push(Prop::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

fn eval(p: &Prop, t: u64) -> bool {
    match p {
        Prop::Fls => false,
        Prop::Var(v) => *v < 64 && t >> v & 1 == 1,
        Prop::Imp(a, b) => !eval(a, t) || eval(b, t),
    }
}

/// `H ⊨ p` by a truth table over atoms `0..=max atom`.
pub fn models_truth_table(h: &BTreeSet<Prop>, p: &Prop) -> bool {
    let top = h
        .iter()
        .chain([p])
        .flat_map(|q| q.vars())
        .max()
        .map_or(0, |v| v + 1);
    assert!(top <= 20, "truth table too wide");
    (0..1u64 << top).all(|t| !h.iter().all(|q| eval(q, t)) || eval(p, t))
}

/// Whether `t` satisfies every member of `h` and falsifies `p`.
pub fn falsifies(h: &BTreeSet<Prop>, p: &Prop, t: &Valuation) -> bool {
    let mask = t.iter().filter(|&&v| v < 64).fold(0u64, |m, &v| m | 1 << v);
    h.iter().all(|q| eval(q, mask)) && !eval(p, mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations;

    #[test]
    fn prop_count() {
        assert_eq!(all_props(2, 3).len(), 471);
        assert_eq!(all_props(0, 0), vec![Prop::Fls]);
    }

    #[test]
    fn warshall_small() {
        let mut u = Universe::new();
        let (a, b, c) = (u.nat(0), u.nat(1), u.nat(2));
        let r = Rel::from_pairs(&mut u, [(a, b), (b, c)]);
        let plus = warshall(&mut u, r, false);
        assert_eq!(plus, u.parse("{<0,1>,<1,2>,<0,2>}").unwrap());
        let star = warshall(&mut u, r, true);
        assert_eq!(u.card(star), 6);
    }

    #[test]
    fn wf_definition() {
        let mut u = Universe::new();
        let (a, b) = (u.nat(0), u.nat(1));
        let cyc = Rel::from_pairs(&mut u, [(a, b), (b, a)]);
        assert!(!is_wf_by_subsets(&u, cyc));
        let line = Rel::from_pairs(&mut u, [(a, b)]);
        assert!(is_wf_by_subsets(&u, line));
        let three = u.nat(3);
        let m = relations::memrel(&mut u, three);
        assert!(is_wf_by_subsets(&u, m));
    }

    #[test]
    fn truth_tables() {
        let p = crate::proplogic::parse_prop("#0 => #0").unwrap();
        assert!(models_truth_table(&BTreeSet::new(), &p));
        let q = crate::proplogic::parse_prop("#1").unwrap();
        assert!(!models_truth_table(&BTreeSet::new(), &q));
        assert!(falsifies(&BTreeSet::new(), &q, &Valuation::new()));
    }
}
