mod common;

use common::{descriptor_grid, dim_formula};
use ratcurves::agraph::canonical_form;
use ratcurves::strata::{
    dimension_steps, enumerate_strata, expected_dim, obstruction_rank, stratification_poset, strata,
};
use ratcurves::TargetDescriptor;

const CASES: [(u32, u32); 9] = [(0, 2), (0, 3), (0, 4), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)];

fn grid() -> Vec<TargetDescriptor> {
    descriptor_grid().into_iter().map(|(n, ds)| TargetDescriptor::new(n, ds).unwrap()).collect()
}

#[test]
fn codim_is_the_edge_count() {
    let x = TargetDescriptor::hypersurface(5, 2).unwrap();
    for (r, e) in CASES {
        for s in strata(r, e, Some(&x)).unwrap() {
            assert_eq!(s.codim_in_main, s.graph.edge_count());
            assert!(s.graph.is_stable());
            assert_eq!(s.expected_dim, Some(expected_dim(&x, &s.graph)));
        }
    }
}

#[test]
fn poset_has_one_source_and_unit_steps() {
    for x in grid() {
        for (r, e) in CASES {
            let p = stratification_poset(r, e, Some(&x)).unwrap();
            assert_eq!(p.sources(), vec![0]);
            assert!(dimension_steps(&p, &x).iter().all(|&s| s == 1));
            for &(a, b) in &p.edges {
                assert_eq!(p.nodes[b].codim, p.nodes[a].codim + 1);
            }
            // Every non-main stratum is covered by something.
            for i in 1..p.nodes.len() {
                assert!(p.edges.iter().any(|&(_, b)| b == i));
            }
        }
    }
}

#[test]
fn obstruction_rank_is_the_dimension_gap() {
    for x in grid() {
        let ambient = TargetDescriptor::projective_space(x.n).unwrap();
        let sum: u64 = x.degrees.iter().map(|&d| d as u64).sum();
        for (r, e) in CASES {
            for g in enumerate_strata(r, e).unwrap() {
                let rank = obstruction_rank(&x, &g);
                assert_eq!(rank as i64, expected_dim(&ambient, &g) - expected_dim(&x, &g));
                assert_eq!(rank, sum * g.beta_total() as u64 + x.degrees.len() as u64);
            }
        }
    }
}

#[test]
fn dims_agree_with_the_reference_formula() {
    for x in grid() {
        let ds: Vec<i64> = x.degrees.iter().map(|&d| d as i64).collect();
        for (r, e) in CASES {
            for g in enumerate_strata(r, e).unwrap() {
                let want =
                    dim_formula(x.n as i64, &ds, g.beta_total() as i64, g.tail_count() as i64, g.edge_count() as i64);
                assert_eq!(expected_dim(&x, &g), want);
            }
        }
    }
}

#[test]
fn ordering_is_by_codim_then_canonical_form() {
    for (r, e) in CASES {
        let keys: Vec<_> = enumerate_strata(r, e).unwrap().iter().map(|g| (g.edge_count(), canonical_form(g))).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
