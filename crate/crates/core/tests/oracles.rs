use nondeg::ideal::{quotient, saturate, saturate_by_ideal, SaturationMode};
use nondeg::rng::SeededRng;
use nondeg::systems::{random_polynomial, random_small_system};
use nondeg::Ideal;

/// `I : K^∞` by iterating `I : K` until it stops growing.
fn saturate_by_fixpoint(ring: &nondeg::Ring, i: &Ideal, k: &Ideal) -> Ideal {
    let mut cur = i.reduced(ring);
    loop {
        let mut next: Option<Ideal> = None;
        for g in k.gens() {
            let q = quotient(ring, &cur, g).unwrap();
            next = Some(match next {
                None => q,
                Some(a) => nondeg::ideal::intersect(ring, &a, &q),
            });
        }
        let next = next.unwrap().reduced(ring);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[test]
fn random_saturation_matches_the_fixpoint() {
    for seed in 0..30 {
        let sys = random_small_system(500 + seed, 65521).unwrap();
        let r = &sys.ring;
        let mut rng = SeededRng::new(seed);
        let i = Ideal::new(sys.polys.clone());
        let k = Ideal::new((0..2).map(|_| random_polynomial(r, 2, &mut rng)));
        let want = saturate_by_fixpoint(r, &i, &k);
        let det = saturate_by_ideal(r, &i, &k, SaturationMode::Deterministic).unwrap();
        assert_eq!(det.reduced(r), want, "seed {seed}, deterministic");
        let rnd = saturate_by_ideal(r, &i, &k, SaturationMode::Random(seed)).unwrap();
        assert_eq!(rnd.reduced(r), want, "seed {seed}, random");
    }
}

#[test]
fn single_saturation_matches_the_fixpoint() {
    for seed in 0..30 {
        let sys = random_small_system(900 + seed, 65521).unwrap();
        let r = &sys.ring;
        let mut rng = SeededRng::new(seed);
        let i = Ideal::new(sys.polys.clone());
        let f = random_polynomial(r, 2, &mut rng);
        let want = saturate_by_fixpoint(r, &i, &Ideal::new([f.clone()]));
        assert_eq!(saturate(r, &i, &f).unwrap().reduced(r), want, "seed {seed}");
    }
}
