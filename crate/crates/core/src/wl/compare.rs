use std::fmt;
use std::str::FromStr;

use super::coloring::{histogram_of, Coloring, Histogram};
use super::kwl::{default_cap, TupleRefinement};
use super::refine::{drive, NodeRefinement, Refinement};
use super::WlError;
use crate::graph::{disjoint_union, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    OneWl,
    NcOneWl,
    TwoWl,
    ThreeWl,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::OneWl, Method::NcOneWl, Method::TwoWl, Method::ThreeWl];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::OneWl => "1wl",
            Method::NcOneWl => "nc1wl",
            Method::TwoWl => "2wl",
            Method::ThreeWl => "3wl",
        }
    }

    /// Tuple width for k-WL methods.
    pub fn tuple_width(self) -> Option<usize> {
        match self {
            Method::TwoWl => Some(2),
            Method::ThreeWl => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = WlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| WlError::UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Distinguished,
    NotDistinguished,
}

impl Verdict {
    pub fn is_distinguished(self) -> bool {
        self == Verdict::Distinguished
    }
}

/// Outcome of a joint refinement of two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementReport {
    pub method: Method,
    pub verdict: Verdict,
    /// Refinement rounds performed (0 when the initial colorings differ).
    pub iterations_run: usize,
    /// Index of the first coloring whose histograms differ.
    pub distinguishing_iteration: Option<usize>,
    /// Per-coloring `(first graph, second graph)` histograms, initial first.
    pub histograms: Vec<(Histogram, Histogram)>,
}

/// Refines a single graph with the chosen method.
pub fn refine(g: &Graph, method: Method) -> Result<Vec<Coloring>, WlError> {
    refine_with_cap(g, method, None)
}

pub fn refine_with_cap(
    g: &Graph,
    method: Method,
    k_cap: Option<usize>,
) -> Result<Vec<Coloring>, WlError> {
    Ok(match method {
        Method::OneWl => super::refine_1wl(g),
        Method::NcOneWl => super::refine_nc1wl(g),
        Method::TwoWl | Method::ThreeWl => {
            let k = method.tuple_width().expect("tuple method");
            super::refine_kwl_with_cap(g, k, k_cap.unwrap_or_else(|| default_cap(k)))?
        }
    })
}

/// Joint isomorphism test of `g1` and `g2`.
///
/// Both graphs are colored against one shared interner. Before every round
/// the two color histograms are compared; the first difference decides
/// "distinguished". A round that leaves the joint partition unchanged ends
/// the run with "not distinguished".
pub fn compare(g1: &Graph, g2: &Graph, method: Method) -> Result<RefinementReport, WlError> {
    compare_with_cap(g1, g2, method, None)
}

pub fn compare_with_cap(
    g1: &Graph,
    g2: &Graph,
    method: Method,
    k_cap: Option<usize>,
) -> Result<RefinementReport, WlError> {
    if g1.node_count() != g2.node_count() {
        let h1 = vec![(0, g1.node_count())];
        let h2 = vec![(0, g2.node_count())];
        return Ok(RefinementReport {
            method,
            verdict: Verdict::Distinguished,
            iterations_run: 0,
            distinguishing_iteration: Some(0),
            histograms: vec![(h1, h2)],
        });
    }

    match method {
        Method::OneWl | Method::NcOneWl => {
            let (union, split) = disjoint_union(g1, g2);
            let refinement = if method == Method::OneWl {
                NodeRefinement::one_wl(&union)
            } else {
                NodeRefinement::nc_one_wl(&union)
            };
            Ok(joint_run(&refinement, split, method))
        }
        Method::TwoWl | Method::ThreeWl => {
            let k = method.tuple_width().expect("tuple method");
            let cap = k_cap.unwrap_or_else(|| default_cap(k));
            let refinement = TupleRefinement::new(&[g1, g2], k, cap)?;
            let split = refinement.sizes()[0];
            Ok(joint_run(&refinement, split, method))
        }
    }
}

fn joint_run<R: Refinement>(refinement: &R, split: usize, method: Method) -> RefinementReport {
    let mut histograms = Vec::new();
    let mut distinguishing_iteration = None;
    let history = drive(refinement, |coloring| {
        let (a, b) = coloring.colors().split_at(split);
        let pair = (histogram_of(a), histogram_of(b));
        let differ = pair.0 != pair.1;
        if differ {
            distinguishing_iteration = Some(histograms.len());
        }
        histograms.push(pair);
        !differ
    });
    RefinementReport {
        method,
        verdict: if distinguishing_iteration.is_some() {
            Verdict::Distinguished
        } else {
            Verdict::NotDistinguished
        },
        iterations_run: history.len() - 1,
        distinguishing_iteration,
        histograms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, repeat, star};

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("4wl".parse::<Method>().is_err());
    }

    #[test]
    fn hexagon_vs_two_triangles() {
        let c6 = cycle(6);
        let two_k3 = repeat(&complete(3), 2);
        let r = compare(&c6, &two_k3, Method::OneWl).unwrap();
        assert_eq!(r.verdict, Verdict::NotDistinguished);
        assert_eq!(r.iterations_run, 1);

        let r = compare(&c6, &two_k3, Method::NcOneWl).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert_eq!(r.distinguishing_iteration, Some(1));
        assert_eq!(r.histograms[0].0, r.histograms[0].1);
        assert_ne!(r.histograms[1].0, r.histograms[1].1);
    }

    #[test]
    fn eight_cycle_vs_two_squares() {
        let c8 = cycle(8);
        let two_c4 = repeat(&cycle(4), 2);
        assert_eq!(
            compare(&c8, &two_c4, Method::NcOneWl).unwrap().verdict,
            Verdict::NotDistinguished
        );
        assert_eq!(
            compare(&c8, &two_c4, Method::TwoWl).unwrap().verdict,
            Verdict::NotDistinguished
        );
        assert_eq!(
            compare(&c8, &two_c4, Method::ThreeWl).unwrap().verdict,
            Verdict::Distinguished
        );
    }

    #[test]
    fn different_sizes_split_at_zero() {
        let r = compare(&path(3), &path(4), Method::ThreeWl).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert_eq!((r.iterations_run, r.distinguishing_iteration), (0, Some(0)));
    }

    #[test]
    fn path_vs_star_split_by_degrees() {
        for m in Method::ALL {
            let r = compare(&path(4), &star(3), m).unwrap();
            assert_eq!(r.verdict, Verdict::Distinguished, "{m}");
        }
        let r = compare(&path(4), &star(3), Method::OneWl).unwrap();
        assert_eq!(r.distinguishing_iteration, Some(1));
    }

    #[test]
    fn isomorphic_copies_stay_together() {
        let g = path(4);
        let h = g.permute(&[2, 0, 3, 1]);
        for m in Method::ALL {
            let r = compare(&g, &h, m).unwrap();
            assert_eq!(r.verdict, Verdict::NotDistinguished, "{m}");
            assert!(r.histograms.iter().all(|(a, b)| a == b));
        }
    }
}
