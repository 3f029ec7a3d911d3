use std::collections::{HashMap, VecDeque};

use super::alphabet::{Letter, TrackAlphabet};
use crate::error::{Error, Result};

/// Whether states accept/reject or carry an output value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Outputs are `0` (reject) or `1` (accept).
    Accept,
    /// Deterministic finite automaton with output (DFAO).
    Output,
}

/// A complete deterministic automaton over a [`TrackAlphabet`].
///
/// State 0 is initial. `delta[q * |alphabet| + a]` is the successor of `q`
/// on letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: TrackAlphabet,
    mode: Mode,
    outputs: Vec<u32>,
    delta: Vec<u32>,
}

/// A word on which two labelings disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Vec<Letter>,
    pub expected: u32,
    pub actual: u32,
}

impl Automaton {
    pub fn new(alphabet: TrackAlphabet, mode: Mode, outputs: Vec<u32>, delta: Vec<u32>) -> Result<Self> {
        let k = alphabet.size();
        let n = outputs.len();
        if n == 0 {
            return Err(Error::Rejected("an automaton needs an initial state".into()));
        }
        if delta.len() != n * k {
            return Err(Error::Rejected(format!(
                "transition table has {} entries, expected {} states x {} letters",
                delta.len(),
                n,
                k
            )));
        }
        if let Some(&bad) = delta.iter().find(|&&d| d as usize >= n) {
            return Err(Error::Rejected(format!("transition to unknown state {bad}")));
        }
        if mode == Mode::Accept && outputs.iter().any(|&o| o > 1) {
            return Err(Error::Rejected("acceptor outputs must be 0 or 1".into()));
        }
        Ok(Automaton {
            alphabet,
            mode,
            outputs,
            delta,
        })
    }

    pub fn alphabet(&self) -> &TrackAlphabet {
        &self.alphabet
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.size()
    }

    #[inline]
    pub fn step(&self, q: u32, a: Letter) -> u32 {
        self.delta[q as usize * self.num_letters() + a as usize]
    }

    pub fn output(&self, q: u32) -> u32 {
        self.outputs[q as usize]
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn transitions(&self) -> &[u32] {
        &self.delta
    }

    /// State reached from the initial state.
    pub fn run(&self, word: &[Letter]) -> u32 {
        word.iter().fold(0, |q, &a| self.step(q, a))
    }

    /// Output after reading `word` (1/0 for acceptors).
    pub fn eval(&self, word: &[Letter]) -> u32 {
        self.output(self.run(word))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.eval(word) != 0
    }

    /// Redirects one transition.
    pub fn set_transition(&mut self, q: u32, a: Letter, target: u32) {
        assert!((target as usize) < self.num_states());
        let k = self.num_letters();
        self.delta[q as usize * k + a as usize] = target;
    }

    pub fn set_output(&mut self, q: u32, value: u32) {
        assert!(self.mode == Mode::Output || value <= 1);
        self.outputs[q as usize] = value;
    }

    /// States from which a nonzero output is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.num_letters();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                preds[self.delta[q * k + a] as usize].push(q as u32);
            }
        }
        let mut live: Vec<bool> = self.outputs.iter().map(|&o| o != 0).collect();
        let mut queue: VecDeque<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// States reachable from the initial state, in BFS order.
    pub fn reachable_states(&self) -> Vec<u32> {
        let k = self.num_letters();
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![0u32];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i] as usize;
            for a in 0..k {
                let r = self.delta[q * k + a];
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Reachable states that are not dead (can still produce nonzero output).
    pub fn num_live_states(&self) -> usize {
        let live = self.live_states();
        self.reachable_states()
            .into_iter()
            .filter(|&q| live[q as usize])
            .count()
    }

    /// True iff some reachable state is dead (every continuation outputs 0).
    pub fn has_dead_state(&self) -> bool {
        self.num_live_states() < self.reachable_states().len()
    }

    /// Renumbers states in BFS order from the initial state, dropping
    /// unreachable ones.
    pub fn trim(&self) -> Automaton {
        let order = self.reachable_states();
        let mut index = vec![u32::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            index[q as usize] = i as u32;
        }
        let k = self.num_letters();
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for a in 0..k {
                delta.push(index[self.delta[q as usize * k + a] as usize]);
            }
        }
        let outputs = order.iter().map(|&q| self.outputs[q as usize]).collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            mode: self.mode,
            outputs,
            delta,
        }
    }

    /// The minimal complete automaton with the same input/output behaviour,
    /// states in BFS order. Moore partition refinement on the reachable part.
    pub fn minimize(&self) -> Automaton {
        let a = self.trim();
        let n = a.num_states();
        let k = a.num_letters();

        let mut class: Vec<u32> = {
            let mut ids: HashMap<u32, u32> = HashMap::new();
            a.outputs
                .iter()
                .map(|&o| {
                    let next = ids.len() as u32;
                    *ids.entry(o).or_insert(next)
                })
                .collect()
        };
        let mut count = class.iter().copied().max().map_or(0, |m| m + 1) as usize;
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
            let mut next_class = Vec::with_capacity(n);
            for q in 0..n {
                let mut key = Vec::with_capacity(k + 1);
                key.push(class[q]);
                key.extend((0..k).map(|x| class[a.delta[q * k + x] as usize]));
                let fresh = ids.len() as u32;
                next_class.push(*ids.entry(key).or_insert(fresh));
            }
            let new_count = ids.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let mut outputs = vec![0u32; count];
        let mut delta = vec![0u32; count * k];
        for q in 0..n {
            let c = class[q] as usize;
            outputs[c] = a.outputs[q];
            for x in 0..k {
                delta[c * k + x] = class[a.delta[q * k + x] as usize];
            }
        }
        // class of the initial state must be 0 before trimming renumbers BFS
        let init = class[0] as usize;
        let quotient = Automaton {
            alphabet: a.alphabet.clone(),
            mode: a.mode,
            outputs,
            delta,
        };
        quotient.rebase(init as u32).trim()
    }

    /// Same automaton with `init` as the initial state.
    fn rebase(&self, init: u32) -> Automaton {
        if init == 0 {
            return self.clone();
        }
        let swap = |q: u32| {
            if q == 0 {
                init
            } else if q == init {
                0
            } else {
                q
            }
        };
        let n = self.num_states();
        let k = self.num_letters();
        let mut outputs = vec![0; n];
        let mut delta = vec![0; n * k];
        for q in 0..n as u32 {
            let p = swap(q) as usize;
            outputs[p] = self.outputs[q as usize];
            for a in 0..k {
                delta[p * k + a] = swap(self.delta[q as usize * k + a]);
            }
        }
        Automaton {
            alphabet: self.alphabet.clone(),
            mode: self.mode,
            outputs,
            delta,
        }
    }

    /// Synchronous product; the output of a pair state is `combine(p, q)`.
    pub fn product(
        &self,
        other: &Automaton,
        mode: Mode,
        combine: impl Fn(u32, u32) -> u32,
    ) -> Result<Automaton> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        let k = self.num_letters();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        ids.insert((0, 0), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k as Letter {
                let next = (self.step(p, a), other.step(q, a));
                let fresh = pairs.len() as u32;
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    fresh
                });
                delta.push(id);
            }
            i += 1;
        }
        let outputs = pairs
            .iter()
            .map(|&(p, q)| combine(self.output(p), other.output(q)))
            .collect();
        Automaton::new(self.alphabet.clone(), mode, outputs, delta)
    }

    /// Acceptor for the union of two languages.
    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, Mode::Accept, |p, q| u32::from(p != 0 || q != 0))
    }

    /// Acceptor for the intersection of two languages.
    pub fn intersection(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, Mode::Accept, |p, q| u32::from(p != 0 && q != 0))
    }

    /// Acceptor for words whose output is `value`.
    pub fn preimage(&self, value: u32) -> Automaton {
        let outputs = self
            .outputs
            .iter()
            .map(|&o| u32::from(o == value))
            .collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            mode: Mode::Accept,
            outputs,
            delta: self.delta.clone(),
        }
    }
}

/// Merges acceptors into one DFAO: the output on a word is the value paired
/// with the first acceptor that accepts it, or 0 if none does.
pub fn combine(parts: &[(&Automaton, u32)]) -> Result<Automaton> {
    let Some((first, _)) = parts.first() else {
        return Err(Error::Rejected("nothing to combine".into()));
    };
    let alphabet = first.alphabet().clone();
    if let Some((bad, _)) = parts.iter().find(|(a, _)| a.alphabet() != &alphabet) {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            alphabet,
            bad.alphabet()
        )));
    }
    let k = alphabet.size();
    let start: Vec<u32> = vec![0; parts.len()];
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    ids.insert(start.clone(), 0);
    let mut tuples = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        for a in 0..k as Letter {
            let next: Vec<u32> = tuples[i]
                .iter()
                .zip(parts)
                .map(|(&q, (aut, _))| aut.step(q, a))
                .collect();
            let fresh = tuples.len() as u32;
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    ids.insert(next.clone(), fresh);
                    tuples.push(next);
                    fresh
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let outputs = tuples
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .zip(parts)
                .find(|(&q, (aut, _))| aut.output(q) != 0)
                .map_or(0, |(_, (_, v))| *v)
        })
        .collect();
    Automaton::new(alphabet, Mode::Output, outputs, delta)
}

/// Shortest word of length at most `depth` on which `a` and `b` differ.
pub fn equivalent(a: &Automaton, b: &Automaton, depth: usize) -> Result<Option<Counterexample>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            a.alphabet(),
            b.alphabet()
        )));
    }
    let k = a.num_letters() as Letter;
    // parent links for word reconstruction
    let mut nodes: Vec<((u32, u32), usize, Letter, usize)> = vec![((0, 0), usize::MAX, 0, 0)];
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    seen.insert((0, 0), ());
    let mut i = 0;
    while i < nodes.len() {
        let ((p, q), _, _, len) = nodes[i];
        if a.output(p) != b.output(q) {
            let mut word = Vec::with_capacity(len);
            let mut j = i;
            while nodes[j].1 != usize::MAX {
                word.push(nodes[j].2);
                j = nodes[j].1;
            }
            word.reverse();
            return Ok(Some(Counterexample {
                word,
                expected: a.output(p),
                actual: b.output(q),
            }));
        }
        if len < depth {
            for x in 0..k {
                let next = (a.step(p, x), b.step(q, x));
                if seen.insert(next, ()).is_none() {
                    nodes.push((next, i, x, len + 1));
                }
            }
        }
        i += 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn bits() -> TrackAlphabet {
        TrackAlphabet::numeric(1)
    }

    /// Accepts binary words (lsd-first) whose value is divisible by 3,
    /// built with redundant copies of each residue.
    fn mod3_redundant() -> Automaton {
        // state = residue + 3 * copy, tracking weight 2^i mod 3 as well
        // states: (residue, weight) with weight in {1, 2}
        let mut outputs = Vec::new();
        let mut delta = Vec::new();
        let idx = |r: u32, w: u32| r * 2 + (w - 1);
        for r in 0..3 {
            for w in 1..=2 {
                outputs.push(u32::from(r == 0));
                let nw = (w * 2) % 3;
                delta.push(idx(r, nw));
                delta.push(idx((r + w) % 3, nw));
            }
        }
        Automaton::new(bits(), Mode::Accept, outputs, delta).unwrap()
    }

    #[test]
    fn minimization_is_idempotent_and_equivalent() {
        let a = mod3_redundant();
        let m = a.minimize();
        assert_eq!(m.minimize().num_states(), m.num_states());
        assert!(equivalent(&a, &m, 12).unwrap().is_none());
        // 6 = 110 lsd-first: 0,1,1
        assert!(m.accepts(&[0, 1, 1]));
        assert!(m.accepts(&[1, 1]));
        assert!(!m.accepts(&[1, 0, 1]));
    }

    #[test]
    fn random_automata_minimize_equivalently() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let alphabet = TrackAlphabet::numeric(2);
        for _ in 0..20 {
            let n = 50;
            let outputs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let delta: Vec<u32> = (0..n * 4).map(|_| rng.gen_range(0..n as u32)).collect();
            let a = Automaton::new(alphabet.clone(), Mode::Accept, outputs, delta).unwrap();
            let m = a.minimize();
            assert!(m.num_states() <= a.num_states());
            assert!(equivalent(&a, &m, 12).unwrap().is_none());
            assert_eq!(m.minimize(), m);
        }
    }

    #[test]
    fn equivalence_finds_shortest_difference() {
        let a = mod3_redundant();
        let mut b = a.clone();
        // accept nothing after reading a single 1
        let q = b.run(&[1]);
        b.set_output(q, 1);
        let cex = equivalent(&a, &b, 4).unwrap().unwrap();
        assert_eq!(cex.word, vec![1]);
        assert!(equivalent(&a, &a, 8).unwrap().is_none());
        let other = Automaton::new(TrackAlphabet::numeric(2), Mode::Accept, vec![1], vec![0; 4]).unwrap();
        assert!(matches!(equivalent(&a, &other, 3), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn combine_with_priority() {
        // accepts the empty word and words whose last letter is 0
        let ends_in_zero =
            Automaton::new(bits(), Mode::Accept, vec![1, 1, 0], vec![1, 2, 1, 2, 1, 2]).unwrap();
        let any = Automaton::new(bits(), Mode::Accept, vec![1], vec![0, 0]).unwrap();
        let c = combine(&[(&ends_in_zero, 5), (&any, 7)]).unwrap();
        assert_eq!(c.mode(), Mode::Output);
        assert_eq!(c.eval(&[1, 0]), 5);
        assert_eq!(c.eval(&[0, 1]), 7);
        assert_eq!(c.eval(&[]), 5);
    }

    #[test]
    fn rejects_incomplete_tables() {
        assert!(Automaton::new(bits(), Mode::Accept, vec![1], vec![0]).is_err());
        assert!(Automaton::new(bits(), Mode::Accept, vec![2], vec![0, 0]).is_err());
        assert!(Automaton::new(bits(), Mode::Accept, vec![1], vec![0, 1]).is_err());
    }
}
