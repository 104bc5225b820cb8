//! Backtracking solver for nowhere-zero Z2 x Z2 assignments with prescribed
//! vertex sums. Proper 3-edge-colourings of cubic multipoles are exactly the
//! solutions with all sums zero, so one kernel serves colourings, flows on
//! graphs of higher degree, and boundary-constrained spectrum queries.
//!
//! Propagation: a constraint with one open variable forces it, and a
//! constraint with two open variables filters both domains against each
//! other. Branching picks the open variable with the fewest remaining
//! colours (least index on ties) and tries colours in the order 1, 2, 3.

use serde::{Deserialize, Serialize};

use crate::colour::Colour;
use crate::multipole::{End, Multipole};

const FULL: u8 = 0b1110;

/// Search limit in branching nodes. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None }
    }

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n) }
    }
}

/// Result of a bounded search. `Undecided` means the budget ran out before
/// the question was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome<T> {
    Found(T),
    NotFound,
    Undecided,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Outcome::Undecided)
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::Undecided => Outcome::Undecided,
        }
    }
}

#[derive(Clone, Debug)]
struct Constraint {
    vars: Vec<usize>,
    target: u8,
}

/// Variables with domains in {1,2,3} and XOR-sum constraints.
#[derive(Clone, Debug)]
pub(crate) struct KleinProblem {
    domains: Vec<u8>,
    constraints: Vec<Constraint>,
    var_cons: Vec<Vec<usize>>,
    infeasible: bool,
}

impl KleinProblem {
    pub(crate) fn new(vars: usize) -> Self {
        KleinProblem {
            domains: vec![FULL; vars],
            constraints: Vec::new(),
            var_cons: vec![Vec::new(); vars],
            infeasible: false,
        }
    }

    /// One sum constraint per vertex of `m`, all with target zero. Loops
    /// cancel out of the sum.
    pub(crate) fn from_multipole(m: &Multipole) -> Self {
        let mut p = KleinProblem::new(m.edge_count());
        let mut per_vertex = vec![Vec::new(); m.vertex_count()];
        for (i, e) in m.edges().iter().enumerate() {
            for end in e.ends {
                if let End::Vertex(v) = end {
                    per_vertex[v].push(i);
                }
            }
        }
        for vars in per_vertex {
            p.add_constraint(&vars, Colour::ZERO);
        }
        p
    }

    /// Adds `sum(vars) = target`; repeated variables cancel in pairs.
    pub(crate) fn add_constraint(&mut self, vars: &[usize], target: Colour) {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        let mut reduced: Vec<usize> = Vec::new();
        for v in sorted {
            if reduced.last() == Some(&v) {
                reduced.pop();
            } else {
                reduced.push(v);
            }
        }
        if reduced.is_empty() {
            if !target.is_zero() {
                self.infeasible = true;
            }
            return;
        }
        let id = self.constraints.len();
        for &v in &reduced {
            self.var_cons[v].push(id);
        }
        self.constraints.push(Constraint {
            vars: reduced,
            target: target.value(),
        });
    }

    /// Restricts a variable to the given colours.
    pub(crate) fn restrict(&mut self, var: usize, allowed: &[Colour]) {
        let mask = allowed.iter().fold(0u8, |m, c| m | c.mask()) & FULL;
        self.domains[var] &= mask;
        if self.domains[var] == 0 {
            self.infeasible = true;
        }
    }

    pub(crate) fn fix(&mut self, var: usize, c: Colour) {
        self.restrict(var, &[c]);
    }

    /// First solution in search order, or `NotFound`/`Undecided`.
    pub(crate) fn solve(&self, budget: Budget) -> Outcome<Vec<Colour>> {
        self.solve_counted(budget).0
    }

    pub(crate) fn solve_counted(&self, budget: Budget) -> (Outcome<Vec<Colour>>, u64) {
        if self.infeasible {
            return (Outcome::NotFound, 0);
        }
        let mut st = State::new(self);
        let mut initial: Vec<usize> = (0..self.constraints.len()).collect();
        for v in 0..self.domains.len() {
            let d = st.dom[v];
            if d.count_ones() == 1 && st.value[v] == 0 {
                st.dom[v] = FULL;
                if !st.assign(self, v, d.trailing_zeros() as u8, &mut initial) {
                    return (Outcome::NotFound, 0);
                }
            }
        }
        if !st.propagate(self, initial) {
            return (Outcome::NotFound, 0);
        }
        let mut nodes = 0u64;
        let r = st.branch(self, budget.max_nodes, &mut nodes);
        let out = match r {
            Some(true) => Outcome::Found(
                st.value
                    .iter()
                    .zip(&st.dom)
                    .map(|(&v, &d)| {
                        if v != 0 {
                            Colour::new(v).expect("colour")
                        } else {
                            Colour::new(d.trailing_zeros() as u8).expect("colour")
                        }
                    })
                    .collect(),
            ),
            Some(false) => Outcome::NotFound,
            None => Outcome::Undecided,
        };
        (out, nodes)
    }
}

enum Change {
    Domain(usize, u8),
    Assign(usize),
}

struct State {
    dom: Vec<u8>,
    value: Vec<u8>,
    xor: Vec<u8>,
    open: Vec<usize>,
    trail: Vec<Change>,
}

impl State {
    fn new(p: &KleinProblem) -> Self {
        State {
            dom: p.domains.clone(),
            value: vec![0; p.domains.len()],
            xor: vec![0; p.constraints.len()],
            open: p.constraints.iter().map(|c| c.vars.len()).collect(),
            trail: Vec::new(),
        }
    }

    fn assign(&mut self, p: &KleinProblem, var: usize, c: u8, queue: &mut Vec<usize>) -> bool {
        if self.dom[var] & (1 << c) == 0 {
            return false;
        }
        self.trail.push(Change::Domain(var, self.dom[var]));
        self.dom[var] = 1 << c;
        self.trail.push(Change::Assign(var));
        self.value[var] = c;
        for &k in &p.var_cons[var] {
            self.xor[k] ^= c;
            self.open[k] -= 1;
            queue.push(k);
        }
        true
    }

    fn shrink(&mut self, p: &KleinProblem, var: usize, mask: u8, queue: &mut Vec<usize>) -> bool {
        let new = self.dom[var] & mask;
        if new == self.dom[var] {
            return true;
        }
        if new == 0 {
            return false;
        }
        self.trail.push(Change::Domain(var, self.dom[var]));
        self.dom[var] = new;
        if new.count_ones() == 1 {
            let c = new.trailing_zeros() as u8;
            self.trail.push(Change::Assign(var));
            self.value[var] = c;
            for &k in &p.var_cons[var] {
                self.xor[k] ^= c;
                self.open[k] -= 1;
                queue.push(k);
            }
        } else {
            queue.extend(p.var_cons[var].iter().copied());
        }
        true
    }

    fn propagate(&mut self, p: &KleinProblem, mut queue: Vec<usize>) -> bool {
        while let Some(k) = queue.pop() {
            let need = self.xor[k] ^ p.constraints[k].target;
            match self.open[k] {
                0 => {
                    if need != 0 {
                        return false;
                    }
                }
                1 => {
                    let x = p.constraints[k]
                        .vars
                        .iter()
                        .copied()
                        .find(|&v| self.value[v] == 0)
                        .expect("one open variable");
                    if need == 0 || !self.assign(p, x, need, &mut queue) {
                        return false;
                    }
                }
                2 => {
                    let mut it = p.constraints[k]
                        .vars
                        .iter()
                        .copied()
                        .filter(|&v| self.value[v] == 0);
                    let x = it.next().expect("open");
                    let y = it.next().expect("open");
                    let (mx, my) = pair_support(self.dom[x], self.dom[y], need);
                    if !self.shrink(p, x, mx, &mut queue) || !self.shrink(p, y, my, &mut queue) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn undo_to(&mut self, p: &KleinProblem, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail") {
                Change::Domain(v, d) => self.dom[v] = d,
                Change::Assign(v) => {
                    let c = self.value[v];
                    for &k in &p.var_cons[v] {
                        self.xor[k] ^= c;
                        self.open[k] += 1;
                    }
                    self.value[v] = 0;
                }
            }
        }
    }

    /// `Some(true)` on success with the state holding the solution,
    /// `Some(false)` when the subtree is empty, `None` on budget exhaustion.
    fn branch(&mut self, p: &KleinProblem, limit: Option<u64>, nodes: &mut u64) -> Option<bool> {
        let mut best: Option<(u32, usize)> = None;
        for (v, &d) in self.dom.iter().enumerate() {
            if self.value[v] != 0 || p.var_cons[v].is_empty() {
                continue;
            }
            let size = d.count_ones();
            if best.is_none_or(|(s, _)| size < s) {
                best = Some((size, v));
                if size == 2 {
                    break;
                }
            }
        }
        let Some((_, var)) = best else {
            return Some(true);
        };
        let dom = self.dom[var];
        for c in 1..4u8 {
            if dom & (1 << c) == 0 {
                continue;
            }
            *nodes += 1;
            if limit.is_some_and(|l| *nodes > l) {
                return None;
            }
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.assign(p, var, c, &mut queue) && self.propagate(p, queue) {
                match self.branch(p, limit, nodes) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.undo_to(p, mark);
        }
        Some(false)
    }
}

/// Values of `x` and `y` that have a partner with `x + y = need`, both
/// nonzero.
fn pair_support(dx: u8, dy: u8, need: u8) -> (u8, u8) {
    let mut mx = 0;
    let mut my = 0;
    for c in 1..4u8 {
        let partner = c ^ need;
        if dx & (1 << c) != 0 && partner != 0 && dy & (1 << partner) != 0 {
            mx |= 1 << c;
            my |= 1 << partner;
        }
    }
    (mx, my)
}

/// Variables over {1,2,3} with XOR-zero constraints and table
/// constraints listing the allowed tuples. Propagation makes every
/// constraint arc consistent; branching is as in [`KleinProblem`].
#[derive(Clone, Debug)]
pub(crate) struct TableProblem {
    domains: Vec<u8>,
    xors: Vec<Vec<usize>>,
    tables: Vec<(Vec<usize>, Vec<Vec<u8>>)>,
}

impl TableProblem {
    pub(crate) fn new(vars: usize) -> Self {
        TableProblem {
            domains: vec![FULL; vars],
            xors: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// `sum(vars) = 0`; repeated variables cancel in pairs.
    pub(crate) fn add_xor(&mut self, vars: &[usize]) {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        let mut reduced: Vec<usize> = Vec::new();
        for v in sorted {
            if reduced.last() == Some(&v) {
                reduced.pop();
            } else {
                reduced.push(v);
            }
        }
        self.xors.push(reduced);
    }

    pub(crate) fn add_table(&mut self, vars: Vec<usize>, tuples: Vec<Vec<u8>>) {
        self.tables.push((vars, tuples));
    }

    pub(crate) fn fix(&mut self, var: usize, c: Colour) {
        self.domains[var] &= 1 << c.value();
    }

    pub(crate) fn solve(&self, budget: Budget) -> Outcome<Vec<Colour>> {
        let mut dom = self.domains.clone();
        let mut nodes = 0u64;
        match self.branch(&mut dom, budget.max_nodes, &mut nodes) {
            Some(true) => Outcome::Found(
                dom.iter()
                    .map(|d| Colour::new(d.trailing_zeros() as u8).expect("colour"))
                    .collect(),
            ),
            Some(false) => Outcome::NotFound,
            None => Outcome::Undecided,
        }
    }

    fn propagate(&self, dom: &mut [u8]) -> bool {
        loop {
            let mut changed = false;
            for vars in &self.xors {
                if vars.is_empty() {
                    continue;
                }
                for (i, &x) in vars.iter().enumerate() {
                    // sums reachable by the other variables, as a bit set
                    let mut reach = 1u8;
                    for (j, &y) in vars.iter().enumerate() {
                        if i != j {
                            let mut next = 0u8;
                            for s in 0..4u8 {
                                if reach & (1 << s) != 0 {
                                    for c in 1..4u8 {
                                        if dom[y] & (1 << c) != 0 {
                                            next |= 1 << (s ^ c);
                                        }
                                    }
                                }
                            }
                            reach = next;
                        }
                    }
                    let new = dom[x] & reach;
                    if new == 0 {
                        return false;
                    }
                    if new != dom[x] {
                        dom[x] = new;
                        changed = true;
                    }
                }
            }
            for (vars, tuples) in &self.tables {
                let mut support = vec![0u8; vars.len()];
                for t in tuples {
                    if vars.iter().zip(t).all(|(&v, &c)| dom[v] & (1 << c) != 0) {
                        for (s, &c) in support.iter_mut().zip(t) {
                            *s |= 1 << c;
                        }
                    }
                }
                for (&v, &s) in vars.iter().zip(&support) {
                    let new = dom[v] & s;
                    if new == 0 {
                        return false;
                    }
                    if new != dom[v] {
                        dom[v] = new;
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch(&self, dom: &mut Vec<u8>, limit: Option<u64>, nodes: &mut u64) -> Option<bool> {
        if !self.propagate(dom) {
            return Some(false);
        }
        let best = dom
            .iter()
            .enumerate()
            .filter(|(_, d)| d.count_ones() > 1)
            .min_by_key(|(v, d)| (d.count_ones(), *v))
            .map(|(v, _)| v);
        let Some(var) = best else {
            return Some(true);
        };
        let saved = dom.clone();
        for c in 1..4u8 {
            if saved[var] & (1 << c) == 0 {
                continue;
            }
            *nodes += 1;
            if limit.is_some_and(|l| *nodes > l) {
                return None;
            }
            dom[var] = 1 << c;
            match self.branch(dom, limit, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => dom.copy_from_slice(&saved),
            }
        }
        Some(false)
    }
}
