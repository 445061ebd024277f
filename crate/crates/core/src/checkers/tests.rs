use super::*;
use crate::graph::{gen_cycle, gen_gnp};
use crate::potential::{feasible_potential, is_feasible};
use crate::weights::is_consistent_oracle;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

fn all_verdicts(
    g: &Graph,
    w: &WeightAssignment<i64>,
    phi: &Potential<i64>,
    p: Proposal<i64>,
) -> [Verdict<i64>; 3] {
    [
        check_bellman_ford(g, w, p),
        check_dijkstra(g, w, phi, p).unwrap(),
        check_bidijkstra(g, w, phi, p).unwrap(),
    ]
}

#[test]
fn increases_are_free() {
    let g = gen_cycle(3).unwrap();
    let w = WeightAssignment::new(vec![0i64, 0, 0]);
    let phi = Potential::zero(3);
    for v in all_verdicts(
        &g,
        &w,
        &phi,
        Proposal {
            edge: EdgeId(1),
            new_weight: 4,
        },
    ) {
        assert!(v.accepted);
        assert_eq!(v.insertions, 0);
    }
}

#[test]
fn closing_negative_cycle_rejected() {
    let g = gen_cycle(3).unwrap();
    let w = WeightAssignment::new(vec![0i64, 0, 0]);
    let phi = Potential::zero(3);
    for v in all_verdicts(
        &g,
        &w,
        &phi,
        Proposal {
            edge: EdgeId(0),
            new_weight: -1,
        },
    ) {
        assert!(!v.accepted);
        assert!(v.new_potential.is_none());
    }
}

#[test]
fn zero_weight_cycle_accepted() {
    let g = gen_cycle(3).unwrap();
    let w = WeightAssignment::new(vec![1i64, 1, 1]);
    let phi = Potential::zero(3);
    let p = Proposal {
        edge: EdgeId(0),
        new_weight: -2,
    };
    let mut w2 = w.clone();
    w2.set(p.edge, -2);
    for v in all_verdicts(&g, &w, &phi, p) {
        assert!(v.accepted);
        if let Some(phi2) = v.new_potential {
            assert!(is_feasible(&g, &w2, &phi2));
        }
    }
}

#[test]
fn unbroken_decrease_keeps_potential() {
    let g = gen_cycle(3).unwrap();
    let w = WeightAssignment::new(vec![5i64, 1, 1]);
    let phi = Potential::zero(3);
    let p = Proposal {
        edge: EdgeId(0),
        new_weight: 2,
    };
    let d = check_dijkstra(&g, &w, &phi, p).unwrap();
    let b = check_bidijkstra(&g, &w, &phi, p).unwrap();
    for v in [d, b] {
        assert!(v.accepted);
        assert_eq!(v.insertions, 0);
        assert_eq!(v.new_potential.as_ref(), Some(&phi));
    }
    // SPFA searches on any decrease
    assert!(check_bellman_ford(&g, &w, p).insertions > 0);
}

/// z=0, u=1, v=2, x=3, y=4 on a 5-cycle; setting w(u, v) = -2 breaks the
/// edge by 2 under the potential (1, 1, 1, 0, 0).
fn fig_cycle() -> (Graph, WeightAssignment<i64>, Potential<i64>, Proposal<i64>) {
    let g = gen_cycle(5).unwrap();
    let w = WeightAssignment::new(vec![1, 0, 1, 1, -1]);
    let phi = Potential::new(vec![1, 1, 1, 0, 0]);
    (
        g,
        w,
        phi,
        Proposal {
            edge: EdgeId(1),
            new_weight: -2,
        },
    )
}

#[test]
fn dijkstra_cascades_from_head() {
    let (g, w, phi, p) = fig_cycle();
    let v = check_dijkstra(&g, &w, &phi, p).unwrap();
    assert!(v.accepted);
    assert_eq!(v.new_potential.unwrap().values(), &[2, 1, 3, 2, 1]);
}

#[test]
fn bidijkstra_splits_the_repair() {
    let (g, w, phi, p) = fig_cycle();
    let v = check_bidijkstra(&g, &w, &phi, p).unwrap();
    assert!(v.accepted);
    let phi2 = v.new_potential.unwrap();
    assert_eq!(phi2.values(), &[1, 0, 2, 1, 0]);
    let mut w2 = w.clone();
    w2.set(p.edge, -2);
    assert!(is_feasible(&g, &w2, &phi2));
}

#[test]
fn infeasible_potential_is_refused() {
    let g = gen_cycle(3).unwrap();
    let w = WeightAssignment::new(vec![1i64, -1, 0]);
    let phi = Potential::zero(3);
    let p = Proposal {
        edge: EdgeId(0),
        new_weight: 0,
    };
    assert!(matches!(
        check_dijkstra(&g, &w, &phi, p),
        Err(Error::InfeasiblePotential { edge: 1, .. })
    ));
    assert!(check_bidijkstra(&g, &w, &phi, p).is_err());
}

#[test]
fn checker_names_round_trip() {
    for k in CheckerKind::ALL {
        assert_eq!(k.name().parse::<CheckerKind>().unwrap(), k);
    }
    assert!("astar".parse::<CheckerKind>().is_err());
}

#[test]
fn random_proposals_agree_with_oracle() {
    let mut rng = Pcg64::seed_from_u64(77);
    let g = gen_gnp(30, 3.0, &mut rng).unwrap();
    let mut w = WeightAssignment::constant(g.m(), 3i64);
    let mut phi = Potential::zero(g.n());
    for _ in 0..3000 {
        let p = Proposal {
            edge: EdgeId(rng.random_range(0..g.m())),
            new_weight: rng.random_range(-6..=6),
        };
        let mut w2 = w.clone();
        w2.set(p.edge, p.new_weight);
        let truth = is_consistent_oracle(&g, &w2);
        let [bf, dj, bi] = all_verdicts(&g, &w, &phi, p);
        assert_eq!(bf.accepted, truth);
        assert_eq!(dj.accepted, truth);
        assert_eq!(bi.accepted, truth);
        if truth {
            assert!(is_feasible(&g, &w2, dj.new_potential.as_ref().unwrap()));
            let next = bi.new_potential.unwrap();
            assert!(is_feasible(&g, &w2, &next));
            w = w2;
            phi = next;
        }
    }
    assert!(feasible_potential(&g, &w).is_some());
    assert!(w.values().iter().any(|&x| x < 0));
}
