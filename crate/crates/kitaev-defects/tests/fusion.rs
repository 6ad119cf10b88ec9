//! Worked fusions reproduced step by step, named spot checks, and the
//! natural-transformation basis.

use kitaev_defects::arith::{Cyclotomic, PrimeModulus};
use kitaev_defects::fusion::{
    DefectCache, FusionEngine, FusionTerm, HorizontalEngine, VerticalEngine,
};
use kitaev_defects::oracle::{all_defects, select_pairs, Kind, Scope};
use kitaev_defects::tubes::Defect;
use kitaev_defects::walls::Wall;

fn pm(p: u32) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn d(s: &str) -> Defect {
    s.parse().unwrap()
}

fn single(defect: Defect) -> Vec<FusionTerm> {
    vec![FusionTerm {
        defect,
        multiplicity: 1,
    }]
}

/// `X_k T(a) (x) F_s R(z) = F_{k^-1 s} R(z + s(k^-1 a - nu))` in component nu.
#[test]
fn horizontal_worked_example_outcome() {
    for p in [pm(3), pm(5)] {
        let cache = DefectCache::new();
        for k in p.units() {
            for s in p.units() {
                for a in p.elements() {
                    for z in p.elements() {
                        let left = Defect::new(Wall::X(k), Wall::T, vec![a]);
                        let right = Defect::new(Wall::F(s), Wall::R, vec![z]);
                        let o = HorizontalEngine::default()
                            .fuse(&cache, &left, &right, p)
                            .unwrap();
                        assert_eq!(o.components.len(), p.get() as usize);
                        let kinv = p.inv(k).unwrap();
                        for c in &o.components {
                            let label = p.add(z, p.mul(s, p.sub(p.mul(kinv, a), c.nu)));
                            let want = Defect::new(Wall::F(p.mul(kinv, s)), Wall::R, vec![label]);
                            assert_eq!(c.terms, single(want), "{left} x {right} nu = {}", c.nu);
                        }
                    }
                }
            }
        }
    }
}

/// The labels forced on the pants, and the associator phase picked up when
/// gluing the leg and waist tubes, match the worked example: the phase is
/// `omega^(s gamma k3)` up to a factor constant on each output pants.
#[test]
fn horizontal_worked_example_intermediate_steps() {
    let p = pm(5);
    let cache = DefectCache::new();
    let (k, s, a, z) = (2, 3, 4, 1);
    let kinv = p.inv(k).unwrap();
    let left = Defect::new(Wall::X(k), Wall::T, vec![a]);
    let right = Defect::new(Wall::F(s), Wall::R, vec![z]);
    let setup = HorizontalEngine::default()
        .setup(&cache, &left, &right, p)
        .unwrap();
    for (_, nu, targets) in &setup.components {
        for (_, proj) in targets {
            let basis = proj.basis();
            assert_eq!(basis.len(), p.get() as usize, "k4 is the only free label");
            for (kk, _, _) in &basis {
                assert_eq!(kk[0], p.neg(a));
                assert_eq!(kk[1], p.mul(kinv, a));
                assert_eq!(kk[2], p.sub(p.mul(kinv, a), *nu));
                assert_eq!(kk[3], p.sub(*nu, p.mul(kinv, a)));
                let k3 = kk[3];
                // Leg string g enters as h = -g, waist string gamma as -gamma.
                let mut ratio_by_shift = std::collections::BTreeMap::new();
                for g in p.elements() {
                    for gamma in p.elements() {
                        let (new, e) =
                            proj.glue(kk, (0, 0), (0, p.neg(g)), &[0, 0, p.neg(gamma), 0]);
                        assert_eq!(
                            new,
                            [kk[0], kk[1], kk[2], kk[3], p.sub(kk[4], p.add(g, gamma))]
                        );
                        let ratio = p.sub(e, p.mul(s, p.mul(gamma, k3)));
                        let prev = ratio_by_shift.insert(p.add(g, gamma), ratio);
                        assert!(
                            prev.is_none() || prev == Some(ratio),
                            "phase ratio varies within one output pants"
                        );
                    }
                }
            }
        }
    }
}

/// `R R(a, x) o R F_s(z) = R F_s(x + z + s a)`.
#[test]
fn vertical_worked_example_outcome() {
    for p in [pm(3), pm(5)] {
        let cache = DefectCache::new();
        for s in p.units() {
            for a in p.elements() {
                for x in p.elements() {
                    for z in p.elements() {
                        let lower = Defect::new(Wall::R, Wall::R, vec![a, x]);
                        let upper = Defect::new(Wall::R, Wall::F(s), vec![z]);
                        let o = VerticalEngine.fuse(&cache, &lower, &upper, p).unwrap();
                        let want =
                            Defect::new(Wall::R, Wall::F(s), vec![p.add(p.add(x, z), p.mul(s, a))]);
                        assert_eq!(o.components[0].terms, single(want));
                    }
                }
            }
        }
    }
}

/// Gluing produces exactly `omega^(s k0 h)` on pants with `k0 = a`, `k2 = 0`.
#[test]
fn vertical_worked_example_intermediate_steps() {
    let p = pm(5);
    let cache = DefectCache::new();
    let (s, a, x, z) = (3, 2, 1, 4);
    let lower = Defect::new(Wall::R, Wall::R, vec![a, x]);
    let upper = Defect::new(Wall::R, Wall::F(s), vec![z]);
    let setup = VerticalEngine.setup(&cache, &lower, &upper, p).unwrap();
    for (_, proj) in &setup.components[0].2 {
        for (kk, _, _) in proj.basis() {
            assert_eq!((kk[0], kk[2]), (a, 0));
            for g in p.elements() {
                for h in p.elements() {
                    for gamma in p.elements() {
                        // Lower leg string g, upper h, waist gamma (all entering negated).
                        let (new, e) =
                            proj.glue(&kk, (0, p.neg(g)), (0, p.neg(h)), &[0, p.neg(gamma)]);
                        let k3 = p.sub(kk[3], p.add(g, gamma));
                        let k1 = p.sub(kk[1], p.add(h, gamma));
                        assert_eq!(new, [kk[0], k1, kk[2], k3, 0]);
                        assert_eq!(e, p.mul(s, p.mul(kk[0], h)));
                    }
                }
            }
        }
    }
}

/// Anyons of the transparent wall fuse by adding charges.
#[test]
fn anyon_rule() {
    for p in [pm(2), pm(3)] {
        let cache = DefectCache::new();
        for a in p.elements() {
            for x in p.elements() {
                for b in p.elements() {
                    for y in p.elements() {
                        let l = Defect::new(Wall::X(1), Wall::X(1), vec![a, x]);
                        let r = Defect::new(Wall::X(1), Wall::X(1), vec![b, y]);
                        let o = HorizontalEngine::default().fuse(&cache, &l, &r, p).unwrap();
                        let want =
                            Defect::new(Wall::X(1), Wall::X(1), vec![p.add(a, b), p.add(x, y)]);
                        assert_eq!(o.components[0].terms, single(want));
                    }
                }
            }
        }
    }
}

/// `sigma^x sigma^z = sum_j e^(j + x + z) m^j` at `p = 2`.
#[test]
fn twist_twist_at_p2() {
    let p = pm(2);
    let cache = DefectCache::new();
    for x in 0..2 {
        for z in 0..2 {
            let s = |v| Defect::new(Wall::F(1), Wall::X(1), vec![v]);
            let o = HorizontalEngine::default()
                .fuse(&cache, &s(x), &s(z), p)
                .unwrap();
            let mut want: Vec<FusionTerm> = (0..2)
                .map(|j| FusionTerm {
                    defect: Defect::new(Wall::X(1), Wall::X(1), vec![j, (j + x + z) % 2]),
                    multiplicity: 1,
                })
                .collect();
            want.sort_by(|a, b| a.defect.cmp(&b.defect));
            assert_eq!(o.components[0].terms, want);
        }
    }
}

/// `F_q X_l(x) (x) X_m X_m(c, z) = F_{qm} X_{lm}(z + m(x + q l c))`; at
/// `q = l = m = 1` this is `sigma^x x m^c e^z = sigma^(x + z + c)`.
#[test]
fn twist_absorbs_anyons() {
    for p in [pm(2), pm(3)] {
        let cache = DefectCache::new();
        for q in p.units() {
            for l in p.units() {
                for m in p.units() {
                    for x in p.elements() {
                        for c in p.elements() {
                            for z in p.elements() {
                                let tw = Defect::new(Wall::F(q), Wall::X(l), vec![x]);
                                let an = Defect::new(Wall::X(m), Wall::X(m), vec![c, z]);
                                let o = HorizontalEngine::default()
                                    .fuse(&cache, &tw, &an, p)
                                    .unwrap();
                                let label = p.add(z, p.mul(m, p.add(x, p.mul(q, p.mul(l, c)))));
                                let want = Defect::new(
                                    Wall::F(p.mul(q, m)),
                                    Wall::X(p.mul(l, m)),
                                    vec![label],
                                );
                                assert_eq!(o.components[0].terms, single(want), "{tw} x {an}");
                            }
                        }
                    }
                }
            }
        }
    }
}

/// `X_k X_l o X_l X_m = p X_k X_m` for `k != m`, and `X_k X_l o X_l X_k` is
/// the sum of all `X_k X_k` anyons.
#[test]
fn vertical_multiplicities() {
    let p = pm(3);
    let cache = DefectCache::new();
    let o = VerticalEngine
        .fuse(&cache, &d("X:1/X:2"), &d("X:2/X:1"), p)
        .unwrap();
    assert_eq!(o.components[0].terms.len(), 9);
    assert!(o.components[0]
        .terms
        .iter()
        .all(|t| t.multiplicity == 1 && t.defect.bottom == Wall::X(1)));
    let o = VerticalEngine.fuse(&cache, &d("X:1/X:2"), &d("X:2/X:1"), pm(5));
    assert!(o.is_ok());
    let p = pm(5);
    let o = VerticalEngine
        .fuse(&cache, &d("X:1/X:2"), &d("X:2/X:3"), p)
        .unwrap();
    assert_eq!(
        o.components[0].terms,
        vec![FusionTerm {
            defect: d("X:1/X:3"),
            multiplicity: 5
        }]
    );
}

/// `R L o L X_m` has a multiplicity space spanned by `p` single pants with
/// strings `(k0, k1) = (-m k, k)`, each fixed by the projector.
#[test]
fn natural_transformation_basis() {
    for p in [pm(2), pm(3), pm(5)] {
        let cache = DefectCache::new();
        for m in p.units() {
            let upper = Defect::new(Wall::L, Wall::X(m), vec![]);
            let setup = VerticalEngine.setup(&cache, &d("R/L"), &upper, p).unwrap();
            let targets = &setup.components[0].2;
            assert_eq!(targets.len(), 1);
            let (target, proj) = &targets[0];
            assert_eq!(*target, Defect::new(Wall::R, Wall::X(m), vec![]));
            let image = proj.image();
            assert_eq!(image.rank(), p.get() as usize);
            let mut strings: Vec<(u32, u32)> = Vec::new();
            for v in image.basis() {
                assert_eq!(v.len(), 1, "each basis vector is a single pants");
                let (key, c) = v.iter().next().unwrap();
                assert!(c.is_one());
                let fixed = proj.apply(&key.labels, key.hole1, key.hole2);
                assert_eq!(&fixed, v, "basis vectors are fixed by the projector");
                strings.push((key.labels[0], key.labels[1]));
            }
            strings.sort();
            let mut want: Vec<(u32, u32)> = p.elements().map(|k| (p.neg(p.mul(m, k)), k)).collect();
            want.sort();
            assert_eq!(strings, want);
        }
    }
}

/// The multiplicity read off as a trace equals the explicit rank, and the
/// projector is idempotent: every vertical fusion at p = 2 and a seeded
/// sample of horizontal ones.
#[test]
fn trace_equals_rank_p2() {
    let p = pm(2);
    let cache = DefectCache::new();
    let defects = all_defects(&cache, p).unwrap();
    let mut setups = Vec::new();
    for (a, b) in select_pairs(Kind::Vertical, &defects, Scope::Full, 0) {
        setups.push((
            a.clone(),
            b.clone(),
            VerticalEngine.setup(&cache, &a, &b, p).unwrap(),
        ));
    }
    for (a, b) in select_pairs(Kind::Horizontal, &defects, Scope::Sample(500), 7) {
        setups.push((
            a.clone(),
            b.clone(),
            HorizontalEngine::default()
                .setup(&cache, &a, &b, p)
                .unwrap(),
        ));
    }
    for (a, b, setup) in setups {
        for (_, _, targets) in setup.components {
            for (t, proj) in targets {
                let rank = proj.image().rank();
                assert_eq!(
                    proj.trace(),
                    Cyclotomic::from_int(p, rank as i64),
                    "{a} {b} -> {t}"
                );
                assert!(proj.is_idempotent(), "{a} {b} -> {t}");
            }
        }
    }
}
