use std::collections::BTreeSet;

use crate::automata::regular::{
    complement_enumeration, regular_run_end, regular_run_length, regular_run_start,
};
use crate::automata::{eval_inputs, Relation};

use super::{CheckReport, RegularMachines};

/// Depth at which the regular automata are swept.
const AUTOMATON_DEPTH: u32 = 10;
/// Indices below which every regular automaton is compared with the
/// semantic sequences.
const AGREEMENT_BOUND: u64 = 1 << 12;

/// `g(n) = 1` iff `n ≡ 2, 7 (mod 8)`.
pub fn g_is_one_mod_eight(max_index: u64) -> CheckReport {
    let witness = (1..=max_index).find_map(|n| {
        let g = regular_run_length(n);
        ((g == 1) != matches!(n % 8, 2 | 7)).then(|| format!("n={n} g={g}"))
    });
    CheckReport::from_witness("regular_g_one_mod_8", format!("n<={max_index}"), witness)
}

/// `h(n) = 2n` for `n ≡ 1 (mod 4)`, semantically up to `max_index` and
/// through `ep_reg` below the agreement bound.
pub fn h_doubles(max_index: u64, m: &RegularMachines) -> CheckReport {
    let ep = Relation::new(&m.ep_reg);
    let witness = (1..=max_index).step_by(4).find_map(|n| {
        let h = regular_run_end(n);
        if h != 2 * n {
            return Some(format!("n={n} h={h}"));
        }
        (n < AGREEMENT_BOUND && !ep.holds(None, &[n], 2 * n))
            .then(|| format!("n={n} ep_reg rejects 2n"))
    });
    CheckReport::from_witness("regular_h_double", format!("n<={max_index}"), witness)
}

/// `g(h(i) + 1) = 2` for `0 <= i <= max_index`.
pub fn sum_part_a(max_index: u64) -> CheckReport {
    let witness = (0..=max_index).find_map(|i| {
        let x = regular_run_end(i) + 1;
        let g = regular_run_length(x);
        (g != 2).then(|| format!("i={i} h+1={x} g={g}"))
    });
    CheckReport::from_witness("regular_sum_a", format!("i<={max_index}"), witness)
}

fn sum_part(name: &str, max_index: u64, offset: u64, expected: u32) -> CheckReport {
    let t = complement_enumeration(2 * max_index as usize);
    let witness = (1..=max_index).find_map(|i| {
        let k = 2 * i - offset;
        let g = regular_run_length(t[k as usize]);
        (g != expected).then(|| format!("i={i} t({k})={} g={g}", t[k as usize]))
    });
    CheckReport::from_witness(name, format!("i<={max_index}"), witness)
}

/// `g(t(2i)) = 3` for `1 <= i <= max_index`.
pub fn sum_part_b(max_index: u64) -> CheckReport {
    sum_part("regular_sum_b", max_index, 0, 3)
}

/// `g(t(2i − 1)) = 1` for `1 <= i <= max_index`.
pub fn sum_part_c(max_index: u64) -> CheckReport {
    sum_part("regular_sum_c", max_index, 1, 1)
}

/// `tt` is total, functional, increasing, and its range is the complement
/// of `H = {h(n) + 1}` as computed by `ep_reg`, on every `n < 2^10`.
pub fn tt_suite(m: &RegularMachines) -> Vec<CheckReport> {
    let tt = Relation::new(&m.tt);
    let ep = Relation::new(&m.ep_reg);
    let top = 1u64 << AUTOMATON_DEPTH;
    let bound = format!("n<{top}");
    let values: Vec<Vec<u64>> = (0..top).map(|n| tt.values(None, &[n], 2)).collect();

    let total = (1..top)
        .find(|&n| values[n as usize].is_empty())
        .map(|n| format!("n={n} no value"));
    let functional = (1..top)
        .find(|&n| values[n as usize].len() > 1)
        .map(|n| format!("n={n} values={:?}", values[n as usize]));
    let increasing = (1..top - 1).find_map(|n| match (&values[n as usize][..], &values[n as usize + 1][..]) {
        ([y], [z]) if y >= z => Some(format!("n={n} t(n)={y} t(n+1)={z}")),
        _ => None,
    });

    let range: BTreeSet<u64> = values[1..].iter().flatten().copied().collect();
    let x_max = range.iter().next_back().copied().unwrap_or(0);
    let mut h_plus_one = BTreeSet::new();
    for i in 0.. {
        let Some(h) = ep.value(None, &[i], 2) else {
            break;
        };
        h_plus_one.insert(h + 1);
        if h + 1 > x_max {
            break;
        }
    }
    let complement = (1..=x_max)
        .find(|x| range.contains(x) == h_plus_one.contains(x))
        .map(|x| {
            format!(
                "x={x} in_range={} in_H={}",
                range.contains(&x),
                h_plus_one.contains(&x)
            )
        });
    vec![
        CheckReport::from_witness("tt_total", bound.clone(), total),
        CheckReport::from_witness("tt_functional", bound.clone(), functional),
        CheckReport::from_witness("tt_increasing", bound.clone(), increasing),
        CheckReport::from_witness("tt_complement_of_h", format!("x<={x_max}"), complement),
    ]
}

/// The regular automata reproduce `S`, `h`, `g` and `t` below `2^12`, and
/// the sum property holds when read through them.
pub fn regular_automata_agree(m: &RegularMachines) -> CheckReport {
    let sp = Relation::new(&m.sp_reg);
    let ep = Relation::new(&m.ep_reg);
    let tt = Relation::new(&m.tt);
    let t = complement_enumeration(AGREEMENT_BOUND as usize);
    let witness = (0..AGREEMENT_BOUND).find_map(|n| {
        let s = sp.value(None, &[n], 2);
        let h = ep.value(None, &[n], 2);
        let g = eval_inputs(&m.rlr, None, &[n]);
        if s != Some(regular_run_start(n)) || h != Some(regular_run_end(n)) || g != regular_run_length(n) {
            return Some(format!("n={n} sp_reg={s:?} ep_reg={h:?} RLR={g}"));
        }
        if n >= 1 {
            let tn = tt.value(None, &[n], 2);
            if tn != Some(t[n as usize]) {
                return Some(format!("n={n} tt={tn:?} t={}", t[n as usize]));
            }
            let x = tn.unwrap();
            let expected = if n % 2 == 0 { 3 } else { 1 };
            let gx = eval_inputs(&m.rlr, None, &[x]);
            if gx != expected {
                return Some(format!("n={n} RLR(t(n))={gx}"));
            }
        }
        let after = eval_inputs(&m.rlr, None, &[h.unwrap() + 1]);
        (after != 2).then(|| format!("n={n} RLR(h(n)+1)={after}"))
    });
    CheckReport::from_witness("regular_automata_agree", format!("n<{AGREEMENT_BOUND}"), witness)
}

pub fn regular_suite(m: &RegularMachines, max_index: u64) -> Vec<CheckReport> {
    let sum_bound = (max_index / 10).max(16);
    let mut out = vec![
        g_is_one_mod_eight(max_index),
        h_doubles(max_index, m),
        sum_part_a(sum_bound),
        sum_part_b(sum_bound),
        sum_part_c(sum_bound),
    ];
    out.extend(tt_suite(m));
    out.push(regular_automata_agree(m));
    out
}
