use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::model::{word_string, Letter};

pub type StateId = usize;

/// A letter-labelled NFA with ε-edges.
#[derive(Clone, Debug, Default)]
pub struct Nfa {
    names: Vec<String>,
    initial: BTreeSet<StateId>,
    accepting: BTreeSet<StateId>,
    out: Vec<Vec<(Option<Letter>, StateId)>>,
}

pub type StateSet = BTreeSet<StateId>;

impl Nfa {
    pub fn new() -> Nfa {
        Nfa::default()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        self.out.push(Vec::new());
        self.names.len() - 1
    }

    fn add_fresh(&mut self) -> StateId {
        let name = format!("q{}", self.names.len());
        self.add_state(name)
    }

    pub fn add_edge(&mut self, from: StateId, label: Option<Letter>, to: StateId) {
        if !self.out[from].contains(&(label, to)) {
            self.out[from].push((label, to));
        }
    }

    /// Adds a path reading `word` from `from` to `to`, through fresh states.
    pub fn add_word_edge(&mut self, from: StateId, word: &[Letter], to: StateId) {
        match word {
            [] => self.add_edge(from, None, to),
            [single] => self.add_edge(from, Some(*single), to),
            [first, rest @ ..] => {
                let mut prev = self.add_fresh();
                self.add_edge(from, Some(*first), prev);
                for (i, l) in rest.iter().enumerate() {
                    let next = if i + 1 == rest.len() { to } else { self.add_fresh() };
                    self.add_edge(prev, Some(*l), next);
                    prev = next;
                }
            }
        }
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initial.insert(s);
    }

    pub fn set_accepting(&mut self, s: StateId) {
        self.accepting.insert(s);
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, Option<Letter>, StateId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, es)| es.iter().map(move |&(l, t)| (s, l, t)))
    }

    pub fn eps_closure(&self, set: &StateSet) -> StateSet {
        let mut result = set.clone();
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(l, t) in &self.out[s] {
                if l.is_none() && result.insert(t) {
                    stack.push(t);
                }
            }
        }
        result
    }

    /// ε-closure of the letter successors of an ε-closed set.
    pub fn step(&self, set: &StateSet, a: Letter) -> StateSet {
        let next: StateSet = set
            .iter()
            .flat_map(|&s| self.out[s].iter())
            .filter(|(l, _)| *l == Some(a))
            .map(|&(_, t)| t)
            .collect();
        self.eps_closure(&next)
    }

    pub fn start(&self) -> StateSet {
        self.eps_closure(&self.initial)
    }

    fn is_accepting_set(&self, set: &StateSet) -> bool {
        set.iter().any(|s| self.accepting.contains(s))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut cur = self.start();
        for &a in word {
            if cur.is_empty() {
                return false;
            }
            cur = self.step(&cur, a);
        }
        self.is_accepting_set(&cur)
    }

    /// Membership of a string; characters that are not letters are rejected.
    pub fn accepts_str(&self, word: &str) -> bool {
        match crate::model::word(word) {
            Ok(w) => self.accepts(&w),
            Err(_) => false,
        }
    }

    /// An accepting run on `word`, as the list of visited states.
    pub fn accepting_path(&self, word: &[Letter]) -> Option<Vec<StateId>> {
        let mut parent: HashMap<(StateId, usize), (StateId, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut seen = BTreeSet::new();
        for &s in &self.initial {
            seen.insert((s, 0));
            queue.push_back((s, 0));
        }
        while let Some((s, i)) = queue.pop_front() {
            if i == word.len() && self.accepting.contains(&s) {
                let mut path = vec![s];
                let mut cur = (s, i);
                while let Some(&p) = parent.get(&cur) {
                    path.push(p.0);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &(l, t) in &self.out[s] {
                let next = match l {
                    None => (t, i),
                    Some(a) if i < word.len() && word[i] == a => (t, i + 1),
                    _ => continue,
                };
                if seen.insert(next) {
                    parent.insert(next, (s, i));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Whether `path` is an accepting run on `word`.
    pub fn check_path(&self, path: &[StateId], word: &[Letter]) -> bool {
        let (Some(first), Some(last)) = (path.first(), path.last()) else {
            return false;
        };
        if !self.initial.contains(first) || !self.accepting.contains(last) {
            return false;
        }
        let mut positions = BTreeSet::from([0usize]);
        for pair in path.windows(2) {
            let mut next = BTreeSet::new();
            for &i in &positions {
                for &(l, t) in &self.out[pair[0]] {
                    if t != pair[1] {
                        continue;
                    }
                    match l {
                        None => {
                            next.insert(i);
                        }
                        Some(a) if word.get(i) == Some(&a) => {
                            next.insert(i + 1);
                        }
                        _ => {}
                    }
                }
            }
            positions = next;
        }
        positions.contains(&word.len())
    }

    /// States from which an accepting state is reachable reading exactly
    /// `k` letters become accepting.
    pub fn quotient(&self, k: usize) -> Nfa {
        let n = self.state_count();
        let closures: Vec<StateSet> = (0..n).map(|s| self.eps_closure(&BTreeSet::from([s]))).collect();
        let mut layer: StateSet = (0..n).filter(|&s| self.is_accepting_set(&closures[s])).collect();
        for _ in 0..k {
            layer = (0..n)
                .filter(|&s| {
                    closures[s]
                        .iter()
                        .any(|&q| self.out[q].iter().any(|(l, t)| l.is_some() && layer.contains(t)))
                })
                .collect();
        }
        let mut q = self.clone();
        q.accepting = layer;
        q
    }

    /// `L(self) · word`.
    pub fn concat_word(&self, word: &[Letter]) -> Nfa {
        let mut r = self.clone();
        let end = r.add_state(format!("end·{}", word_string(word)));
        let old: Vec<StateId> = r.accepting.iter().copied().collect();
        for s in old {
            r.add_word_edge(s, word, end);
        }
        r.accepting = BTreeSet::from([end]);
        r
    }

    /// Automaton for the single word `word`.
    pub fn single_word(word: &[Letter]) -> Nfa {
        let mut r = Nfa::new();
        let s = r.add_state("w0");
        let e = r.add_state(format!("w·{}", word_string(word)));
        r.add_word_edge(s, word, e);
        r.set_initial(s);
        r.set_accepting(e);
        r
    }

    /// Disjoint union; state names are prefixed by the component index.
    pub fn union(parts: &[Nfa]) -> Nfa {
        let mut r = Nfa::new();
        for (i, p) in parts.iter().enumerate() {
            let base = r.state_count();
            for name in &p.names {
                r.add_state(format!("{i}:{name}"));
            }
            for (s, l, t) in p.edges() {
                r.add_edge(base + s, l, base + t);
            }
            r.initial.extend(p.initial.iter().map(|s| base + s));
            r.accepting.extend(p.accepting.iter().map(|s| base + s));
        }
        r
    }

    /// `Ok(())` if every word over `alphabet` is accepted, otherwise the
    /// shortlex-least rejected word.
    pub fn universal(&self, alphabet: &BTreeSet<Letter>) -> Result<(), String> {
        let start = self.start();
        let mut parent: BTreeMap<StateSet, Option<(StateSet, Letter)>> = BTreeMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(set) = queue.pop_front() {
            if !self.is_accepting_set(&set) {
                let mut w = Vec::new();
                let mut cur = set;
                while let Some(Some((p, a))) = parent.get(&cur) {
                    w.push(*a);
                    cur = p.clone();
                }
                w.reverse();
                return Err(word_string(&w));
            }
            for &a in alphabet {
                let next = self.step(&set, a);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((set.clone(), a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(())
    }

    /// Accepted words of length at most `max_len` over `alphabet`.
    pub fn words_up_to(&self, alphabet: &BTreeSet<Letter>, max_len: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(self.start(), Vec::new())];
        while let Some((set, w)) = stack.pop() {
            if self.is_accepting_set(&set) {
                out.insert(word_string(&w));
            }
            if w.len() == max_len {
                continue;
            }
            for &a in alphabet {
                let next = self.step(&set, a);
                if !next.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(a);
                    stack.push((next, w2));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let names = |set: &StateSet| -> Vec<&str> { set.iter().map(|&s| self.name(s)).collect() };
        let edges: Vec<Value> = self
            .edges()
            .map(|(s, l, t)| {
                json!({
                    "from": self.name(s),
                    "label": l.map(|a| a.to_string()),
                    "to": self.name(t),
                })
            })
            .collect();
        json!({
            "states": self.names,
            "initial": names(&self.initial),
            "accepting": names(&self.accepting),
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n");
        for (i, name) in self.names.iter().enumerate() {
            let shape = if self.accepting.contains(&i) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(s, "  s{i} [label={name:?}, shape={shape}];");
        }
        for (i, &init) in self.initial.iter().enumerate() {
            let _ = writeln!(s, "  start{i} [shape=point];\n  start{i} -> s{init};");
        }
        for (from, l, to) in self.edges() {
            let label = l.map_or("eps".to_string(), |a| a.to_string());
            let _ = writeln!(s, "  s{from} -> s{to} [label={label:?}];");
        }
        s.push_str("}\n");
        s
    }
}
