use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::PRFun;

/// A random well-formed program of arity at most `max_arity` and depth at
/// most `max_depth`. Constants are at most 9.
pub fn generate(seed: u64, max_depth: usize, max_arity: usize) -> PRFun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arity = rng.gen_range(0..=max_arity);
    gen(&mut rng, max_depth.max(1), arity, max_arity)
}

fn leaf(rng: &mut ChaCha8Rng, arity: usize) -> PRFun {
    let succ_ok = arity == 1;
    match rng.gen_range(0..3) {
        0 if succ_ok => PRFun::Succ,
        1 | 0 if arity > 0 => PRFun::Proj(arity, rng.gen_range(0..arity)),
        _ => PRFun::constant(arity, rng.gen_range(0..=9)),
    }
}

fn gen(rng: &mut ChaCha8Rng, depth: usize, arity: usize, max_arity: usize) -> PRFun {
    if depth <= 1 || rng.gen_bool(0.3) {
        return leaf(rng, arity);
    }
    if arity > 0 && rng.gen_bool(0.5) {
        let base = gen(rng, depth - 1, arity - 1, max_arity);
        let step = gen(rng, depth - 1, arity + 1, max_arity);
        return PRFun::prim_rec(base, step);
    }
    let m = rng.gen_range(1..=max_arity.max(1));
    let outer = gen(rng, depth - 1, m, max_arity);
    let inners = (0..m).map(|_| gen(rng, depth - 1, arity, max_arity));
    PRFun::comp(outer, inners.collect::<Vec<_>>())
}
