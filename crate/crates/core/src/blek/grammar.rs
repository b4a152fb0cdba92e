//! Membership for [`Pda`] through the triple grammar `[p, X, q]`.
//!
//! `[p, X, q]` derives `w` when the automaton can go from `p` with `X` on top
//! of the stack to `q`, reading `w`, having removed `X` and everything pushed
//! above it. Facts `([p, X, q], i, j)` over spans of the input are saturated
//! with a worklist; each fact remembers the production that first derived it.

use std::collections::{BTreeSet, HashMap};

use super::{Pda, StackSym, StateId};
use crate::model::Letter;

/// A transition popping exactly one symbol. `push` lists the pushed symbols
/// top first.
struct Rule {
    from: StateId,
    read: Option<Letter>,
    pop: usize,
    push: Vec<usize>,
    to: StateId,
    original: usize,
}

fn normalize(pda: &Pda) -> Vec<Rule> {
    let gamma = pda.stack_alphabet();
    let index = |s: StackSym| gamma.iter().position(|&g| g == s).expect("stack symbol");
    let mut rules = Vec::new();
    for (original, t) in pda.transitions().iter().enumerate() {
        let pushed = t.push.map(index);
        match t.pop {
            Some(x) => rules.push(Rule {
                from: t.from,
                read: t.read,
                pop: index(x),
                push: pushed.into_iter().collect(),
                to: t.to,
                original,
            }),
            None => {
                for x in 0..gamma.len() {
                    rules.push(Rule {
                        from: t.from,
                        read: t.read,
                        pop: x,
                        push: pushed.into_iter().chain([x]).collect(),
                        to: t.to,
                        original,
                    });
                }
            }
        }
    }
    rules
}

type Nonterminal = (StateId, usize, StateId);

/// Nonterminals that derive some word and are reachable from a start symbol.
fn useful(pda: &Pda, rules: &[Rule]) -> BTreeSet<Nonterminal> {
    let n = pda.states().len();
    let mut productive: BTreeSet<Nonterminal> = BTreeSet::new();
    loop {
        let mut changed = false;
        for r in rules {
            for end in 0..n {
                let head = (r.from, r.pop, end);
                if productive.contains(&head) {
                    continue;
                }
                let ok = match r.push.as_slice() {
                    [] => end == r.to,
                    [y] => productive.contains(&(r.to, *y, end)),
                    [y1, y2] => {
                        (0..n).any(|s| productive.contains(&(r.to, *y1, s)) && productive.contains(&(s, *y2, end)))
                    }
                    _ => unreachable!(),
                };
                if ok {
                    productive.insert(head);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let bottom = 0;
    let mut reached: BTreeSet<Nonterminal> = pda
        .accepting()
        .iter()
        .map(|&f| (pda.initial(), bottom, f))
        .filter(|nt| productive.contains(nt))
        .collect();
    let mut stack: Vec<Nonterminal> = reached.iter().copied().collect();
    while let Some((p, x, end)) = stack.pop() {
        for r in rules.iter().filter(|r| r.from == p && r.pop == x) {
            let mut children = Vec::new();
            match r.push.as_slice() {
                [] => {}
                [y] => children.push((r.to, *y, end)),
                [y1, y2] => {
                    for s in 0..n {
                        let (a, b) = ((r.to, *y1, s), (s, *y2, end));
                        if productive.contains(&a) && productive.contains(&b) {
                            children.push(a);
                            children.push(b);
                        }
                    }
                }
                _ => unreachable!(),
            }
            for c in children {
                if productive.contains(&c) && reached.insert(c) {
                    stack.push(c);
                }
            }
        }
    }
    reached
}

type Fact = (StateId, usize, StateId, usize, usize);

#[derive(Clone, Copy, Debug)]
enum Step {
    Pop(usize),
    Replace(usize, usize),
    Push(usize, usize, usize),
}

/// A derivation of the whole input from a start symbol.
#[derive(Debug)]
pub struct Derivation {
    facts: Vec<Fact>,
    steps: Vec<Step>,
    rules: Vec<usize>,
    root: usize,
}

impl Derivation {
    /// Original transition indices of the run, in execution order.
    pub fn transitions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(f) = stack.pop() {
            match self.steps[f] {
                Step::Pop(r) => out.push(self.rules[r]),
                Step::Replace(r, c) => {
                    out.push(self.rules[r]);
                    stack.push(c);
                }
                Step::Push(r, c1, c2) => {
                    out.push(self.rules[r]);
                    stack.push(c2);
                    stack.push(c1);
                }
            }
        }
        out
    }

    pub fn fact_count(&self) -> usize {
        self.facts.len()
    }
}

struct Saturation<'a> {
    word: &'a [Letter],
    useful: &'a BTreeSet<Nonterminal>,
    facts: Vec<Fact>,
    steps: Vec<Step>,
    ids: HashMap<Fact, usize>,
    by_start: HashMap<(StateId, usize, usize), Vec<usize>>,
    by_end: HashMap<(StateId, usize, StateId, usize), Vec<usize>>,
    queue: Vec<usize>,
}

impl Saturation<'_> {
    fn insert(&mut self, fact: Fact, step: Step) {
        let (p, x, q, i, j) = fact;
        if !self.useful.contains(&(p, x, q)) || self.ids.contains_key(&fact) {
            return;
        }
        let id = self.facts.len();
        self.facts.push(fact);
        self.steps.push(step);
        self.ids.insert(fact, id);
        self.by_start.entry((p, x, i)).or_default().push(id);
        self.by_end.entry((p, x, q, j)).or_default().push(id);
        self.queue.push(id);
    }

    /// Start of the span for a rule reading `read` and continuing at `k`.
    fn before(&self, read: Option<Letter>, k: usize) -> Option<usize> {
        match read {
            None => Some(k),
            Some(a) => (k >= 1 && self.word[k - 1] == a).then(|| k - 1),
        }
    }
}

/// Precomputed grammar of one automaton, reusable across words.
pub struct Recognizer {
    initial: StateId,
    accepting: Vec<StateId>,
    rules: Vec<Rule>,
    useful: BTreeSet<Nonterminal>,
    pops: Vec<usize>,
    replace_by_child: HashMap<(StateId, usize), Vec<usize>>,
    push_by_first: HashMap<(StateId, usize), Vec<usize>>,
    push_by_second: HashMap<usize, Vec<usize>>,
}

impl Recognizer {
    pub fn new(pda: &Pda) -> Recognizer {
        let rules = normalize(pda);
        let useful = useful(pda, &rules);
        let mut rec = Recognizer {
            initial: pda.initial(),
            accepting: pda.accepting().iter().copied().collect(),
            rules: Vec::new(),
            useful,
            pops: Vec::new(),
            replace_by_child: HashMap::new(),
            push_by_first: HashMap::new(),
            push_by_second: HashMap::new(),
        };
        for (ri, r) in rules.iter().enumerate() {
            match r.push.as_slice() {
                [] => rec.pops.push(ri),
                [y] => rec.replace_by_child.entry((r.to, *y)).or_default().push(ri),
                [y1, y2] => {
                    rec.push_by_first.entry((r.to, *y1)).or_default().push(ri);
                    rec.push_by_second.entry(*y2).or_default().push(ri);
                }
                _ => unreachable!(),
            }
        }
        rec.rules = rules;
        rec
    }

    pub fn derive(&self, word: &[Letter]) -> Option<Derivation> {
        let rules = &self.rules;
        let n = word.len();
        let mut sat = Saturation {
            word,
            useful: &self.useful,
            facts: Vec::new(),
            steps: Vec::new(),
            ids: HashMap::new(),
            by_start: HashMap::new(),
            by_end: HashMap::new(),
            queue: Vec::new(),
        };
        for &ri in &self.pops {
            let r = &rules[ri];
            for k in 0..=n {
                if let Some(i) = sat.before(r.read, k) {
                    sat.insert((r.from, r.pop, r.to, i, k), Step::Pop(ri));
                }
            }
        }

        while let Some(id) = sat.queue.pop() {
            let (q, y, r_end, k, j) = sat.facts[id];
            if let Some(list) = self.replace_by_child.get(&(q, y)) {
                for &ri in list {
                    let rule = &rules[ri];
                    if let Some(i) = sat.before(rule.read, k) {
                        sat.insert((rule.from, rule.pop, r_end, i, j), Step::Replace(ri, id));
                    }
                }
            }
            if let Some(list) = self.push_by_first.get(&(q, y)) {
                for &ri in list {
                    let rule = &rules[ri];
                    let Some(i) = sat.before(rule.read, k) else { continue };
                    let seconds = sat.by_start.get(&(r_end, rule.push[1], j)).cloned().unwrap_or_default();
                    for c2 in seconds {
                        let (_, _, end, _, j2) = sat.facts[c2];
                        sat.insert((rule.from, rule.pop, end, i, j2), Step::Push(ri, id, c2));
                    }
                }
            }
            if let Some(list) = self.push_by_second.get(&y) {
                for &ri in list {
                    let rule = &rules[ri];
                    let firsts = sat
                        .by_end
                        .get(&(rule.to, rule.push[0], q, k))
                        .cloned()
                        .unwrap_or_default();
                    for c1 in firsts {
                        let k1 = sat.facts[c1].3;
                        if let Some(i) = sat.before(rule.read, k1) {
                            sat.insert((rule.from, rule.pop, r_end, i, j), Step::Push(ri, c1, id));
                        }
                    }
                }
            }
        }

        let root = self
            .accepting
            .iter()
            .find_map(|&f| sat.ids.get(&(self.initial, 0, f, 0, n)).copied())?;
        Some(Derivation {
            facts: sat.facts,
            steps: sat.steps,
            rules: rules.iter().map(|r| r.original).collect(),
            root,
        })
    }
}
