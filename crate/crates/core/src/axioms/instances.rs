//! Randomized instance construction, one recipe per axiom.
//!
//! Recipes are built so the axiom's premise holds for most draws and its
//! equality branch is exercised regularly. Premises are re-checked during
//! evaluation, so a recipe that misses only costs a skipped trial.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::causes::minimal_elements;
use crate::coalition::Coalition;
use crate::indices::IndexKind;

use super::check::ism_premise;
use super::generate::{containing, random_antichain, random_permutation};
use super::quasi::SyntheticQuasiFamily;
use super::{Axiom, IndexProcedure, Instance};

/// Attempts per trial before giving up on a premise.
const ATTEMPTS: usize = 50;

fn draw_n<R: Rng>(rng: &mut R) -> usize {
    rng.gen_range(3..=6)
}

fn antichain<R: Rng>(rng: &mut R, n: usize, allowed: Coalition) -> Vec<Coalition> {
    let draws = rng.gen_range(1..=n + 2);
    random_antichain(rng, allowed, draws)
}

/// Random feature that belongs to some member of `family`.
fn covered_feature<R: Rng>(rng: &mut R, family: &[Coalition]) -> Option<usize> {
    let covered = family.iter().fold(Coalition::EMPTY, |a, s| a.union(*s));
    let pool: Vec<usize> = covered.iter().collect();
    pool.choose(rng).copied()
}

/// Adds members of `extra` that keep `base` an antichain.
fn extend_antichain(base: &mut Vec<Coalition>, extra: &[Coalition]) {
    for &b in extra {
        if base.iter().all(|k| !k.is_subset_of(b) && !b.is_subset_of(*k)) {
            base.push(b);
        }
    }
}

pub(super) fn generate<R: Rng>(procedure: IndexProcedure, axiom: Axiom, rng: &mut R) -> Instance {
    let n = draw_n(rng);
    let full = Coalition::full(n);
    let mut inst = Instance {
        n,
        ..Instance::default()
    };
    if let IndexProcedure::Estimator(kind) = procedure {
        let m = if kind == IndexKind::Responsibility { rng.gen_range(1..=64) } else { rng.gen_range(1..=256) };
        inst.sampling = Some((m, rng.gen()));
    }
    match axiom {
        Axiom::S => {
            inst.games = vec![antichain(rng, n, full)];
            inst.permutation = Some(random_permutation(rng, n));
        }
        Axiom::Nf => {
            let null = rng.gen_range(0..n);
            let mut game = antichain(rng, n, full.without(null));
            if matches!(procedure, IndexProcedure::Estimator(_)) {
                game = glue(rng, game);
            }
            inst.games = vec![game];
        }
        Axiom::Tmce | Axiom::Mce | Axiom::Ge | Axiom::Tp => inst.games = vec![antichain(rng, n, full)],
        Axiom::Msm => {
            for _ in 0..ATTEMPTS {
                let a = antichain(rng, n, full);
                let b = antichain(rng, n, full);
                let i = rng.gen_range(0..n);
                if !containing(&a, i).is_empty() && !containing(&b, i).is_empty() {
                    inst.games = vec![a, b];
                    inst.feature = Some(i);
                    break;
                }
            }
        }
        Axiom::Ue => {
            let i = rng.gen_range(0..n);
            let mut game = antichain(rng, n, full.without(i));
            game.push(Coalition::singleton(i));
            inst.games = vec![game];
            inst.feature = Some(i);
        }
        Axiom::C => contraction_instance(rng, &mut inst),
        Axiom::Mm => {
            for _ in 0..ATTEMPTS {
                let bigger = antichain(rng, n, full);
                let Some(i) = covered_feature(rng, &bigger) else { continue };
                let keep_all = rng.gen_bool(1.0 / 3.0);
                let mut smaller: Vec<Coalition> = containing(&bigger, i)
                    .into_iter()
                    .filter(|_| keep_all || rng.gen_bool(0.5))
                    .collect();
                let others = antichain(rng, n, full.without(i));
                extend_antichain(&mut smaller, &others);
                inst.games = vec![smaller, bigger];
                inst.feature = Some(i);
                break;
            }
        }
        Axiom::Cm => {
            let a = antichain(rng, n, full);
            // Half the time the second game reuses the first's count of
            // causes through i, to exercise the equality clause.
            let i = rng.gen_range(0..n);
            let mut b = antichain(rng, n, full);
            if rng.gen_bool(0.5) {
                for _ in 0..ATTEMPTS {
                    if containing(&b, i).len() == containing(&a, i).len() {
                        break;
                    }
                    b = antichain(rng, n, full);
                }
            }
            inst.games = vec![a, b];
            inst.feature = Some(i);
        }
        Axiom::Ism => ism_instance(rng, &mut inst),
        Axiom::Qmm => {
            for _ in 0..ATTEMPTS {
                let base = antichain(rng, n, full);
                let Some(i) = covered_feature(rng, &base) else { continue };
                // Dropping causes without i can only add sets where i is critical.
                let reduced: Vec<Coalition> = if rng.gen_bool(0.25) {
                    base.clone()
                } else {
                    base.iter().copied().filter(|s| s.contains(i) || rng.gen_bool(0.3)).collect()
                };
                inst.games = vec![base, reduced];
                inst.feature = Some(i);
                break;
            }
        }
        Axiom::Aqm => {
            let h = SyntheticQuasiFamily::random(rng, n, 8, full);
            let i = rng.gen_range(0..n);
            let keep_critical = rng.gen_bool(1.0 / 3.0);
            let mut g: Vec<(Coalition, Coalition)> = h
                .iter()
                .filter(|(_, x)| if x.contains(i) { keep_critical || rng.gen_bool(0.5) } else { rng.gen_bool(0.5) })
                .collect();
            // Extra members of G where i is not critical, outside H.
            let extra = SyntheticQuasiFamily::random(rng, n, 4, full.without(i));
            for (s, x) in extra.iter() {
                if !x.contains(i) && h.chi(s).is_none() && g.iter().all(|(t, _)| *t != s) {
                    g.push((s, x));
                }
            }
            let g = SyntheticQuasiFamily::new(n, g).expect("members come from feasible families");
            inst.families = vec![g, h];
            inst.feature = Some(i);
        }
        Axiom::Aqce => inst.families = vec![SyntheticQuasiFamily::random(rng, n, 8, full)],
        Axiom::As => {
            inst.families = vec![SyntheticQuasiFamily::random(rng, n, 8, full)];
            inst.permutation = Some(random_permutation(rng, n));
        }
        Axiom::Anf => {
            let k = rng.gen_range(0..n);
            inst.families = vec![SyntheticQuasiFamily::random(rng, n, 8, full.without(k))];
        }
        Axiom::Rqm | Axiom::Rmm | Axiom::Rs => {
            let game = antichain(rng, n, full);
            inst.games = vec![glue(rng, game)];
        }
        Axiom::E => {}
    }
    inst
}

/// Ties two covered features together: every cause with `i` also gets
/// `j`, and half the time the reverse, so that `M_i` is contained in (or
/// equal to) `M_j`. Uncovered features stay null.
fn glue<R: Rng>(rng: &mut R, game: Vec<Coalition>) -> Vec<Coalition> {
    let covered: Vec<usize> = game.iter().fold(Coalition::EMPTY, |a, s| a.union(*s)).iter().collect();
    if covered.len() < 2 {
        return game;
    }
    let pair: Vec<usize> = covered.choose_multiple(rng, 2).copied().collect();
    let (i, j) = (pair[0], pair[1]);
    let twins = rng.gen_bool(0.5);
    let tied: Vec<Coalition> = game
        .into_iter()
        .map(|s| if s.contains(i) || (twins && s.contains(j)) { s.with(i).with(j) } else { s })
        .collect();
    minimal_elements(&tied)
}

fn contraction_instance<R: Rng>(rng: &mut R, inst: &mut Instance) {
    let n = inst.n;
    let full = Coalition::full(n);
    let size = rng.gen_range(2..=3.min(n));
    if rng.gen_bool(0.5) {
        // T is the smallest minimal cause of every member.
        let t: Coalition = random_permutation(rng, n).into_iter().take(size).collect();
        let others: Vec<Coalition> = antichain(rng, n, full)
            .into_iter()
            .filter(|s| s.intersection(t).is_empty() || (s.len() >= t.len() && *s != t && !t.is_subset_of(*s)))
            .collect();
        let mut game = vec![t];
        extend_antichain(&mut game, &others);
        inst.games = vec![game];
        inst.set = Some(t);
        return;
    }
    for _ in 0..ATTEMPTS {
        let game = antichain(rng, n, full);
        let covered = game.iter().fold(Coalition::EMPTY, |a, s| a.union(*s));
        if covered.len() < size {
            continue;
        }
        let pool: Vec<usize> = covered.iter().collect();
        let t: Coalition = pool.choose_multiple(rng, size).copied().collect();
        inst.games = vec![game];
        inst.set = Some(t);
        return;
    }
}

fn ism_instance<R: Rng>(rng: &mut R, inst: &mut Instance) {
    let n = inst.n;
    let full = Coalition::full(n);
    for _ in 0..ATTEMPTS {
        let original = antichain(rng, n, full);
        let Some(i) = covered_feature(rng, &original) else { continue };
        if rng.gen_bool(0.2) {
            inst.games = vec![original.clone(), original];
            inst.feature = Some(i);
            return;
        }
        let shrinkable: Vec<Coalition> = containing(&original, i).into_iter().filter(|s| s.len() >= 2).collect();
        let Some(&target) = shrinkable.choose(rng) else { continue };
        let removable: Vec<usize> = target.without(i).iter().collect();
        let e = *removable.choose(rng).expect("cause has another member");
        let mut shrunk: Vec<Coalition> = original.iter().copied().filter(|s| *s != target).collect();
        shrunk.push(target.without(e));
        let shrunk = minimal_elements(&shrunk);
        if ism_premise(&shrunk, &original, i) {
            inst.games = vec![shrunk, original];
            inst.feature = Some(i);
            return;
        }
    }
}
