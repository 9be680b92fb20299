//! Static reference data: orders of known `(w, 5+)`-graphs and of the
//! smallest known PENT(3, r, w) with girth-5 deficiency graph, and the known
//! PENT(k, r) (`w = k >= 3`) with connected girth-5 deficiency graph.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphOrders {
    pub w: usize,
    /// Point counts of the smallest known PENT(3, r, w) with girth-5
    /// deficiency graph; for `w = 7` both the Moore-graph geometry and the
    /// next one.
    pub smallest_pent3: &'static [usize],
    pub moore_bound_girth6: usize,
    pub smallest_known_girth5: usize,
    pub moore_bound_girth5: usize,
}

const fn row(w: usize, smallest_pent3: &'static [usize], g6: usize, known5: usize, g5: usize) -> GraphOrders {
    GraphOrders { w, smallest_pent3, moore_bound_girth6: g6, smallest_known_girth5: known5, moore_bound_girth5: g5 }
}

pub const GRAPH_ORDERS: [GraphOrders; 10] = [
    row(7, &[50, 74], 86, 50, 50),
    row(9, &[124], 146, 96, 82),
    row(13, &[350], 314, 226, 170),
    row(15, &[514], 422, 310, 226),
    row(19, &[978], 686, 500, 362),
    row(21, &[1330], 842, 658, 442),
    row(25, &[2450], 1202, 960, 626),
    row(27, &[2794], 1406, 1054, 730),
    row(31, &[4298], 1862, 1444, 962),
    row(33, &[5134], 2114, 1664, 1090),
];

pub fn graph_orders(w: usize) -> Option<&'static GraphOrders> {
    GRAPH_ORDERS.iter().find(|r| r.w == w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownFamily {
    pub k: usize,
    pub description: &'static str,
    /// The replication numbers realised, when the family is a finite list.
    pub r_values: Option<&'static [usize]>,
}

pub const KNOWN_CONNECTED: [KnownFamily; 6] = [
    KnownFamily {
        k: 3,
        description: "a few PENT(3, r) built by hand, including the Desargues configuration PENT(3, 3)",
        r_values: None,
    },
    KnownFamily { k: 3, description: "PENT(3, r) found by hill climbing for moderate r", r_values: None },
    KnownFamily { k: 3, description: "PENT(3, r) for every r = 3 (mod 6), r >= 33", r_values: None },
    KnownFamily {
        k: 4,
        description: "PENT(4, r) for a finite list of r",
        r_values: Some(&[
            13, 17, 20, 21, 24, 29, 33, 37, 40, 45, 49, 52, 53, 60, 61, 65, 69, 77, 80, 81, 85, 93, 97, 100, 101, 108,
            109, 117, 120, 125, 133, 140, 141, 149, 157, 160, 165, 173, 180,
        ]),
    },
    KnownFamily { k: 5, description: "PENT(5, r) for a finite list of r", r_values: Some(&[20, 25, 30, 35, 40]) },
    KnownFamily {
        k: 6,
        description: "PENT(6, 7) and PENT(7, 7) from the Hoffman-Singleton graph",
        r_values: Some(&[7]),
    },
];

/// Known families with block size `k`; the Hoffman-Singleton entry answers
/// both 6 and 7.
pub fn known_connected(k: usize) -> Vec<&'static KnownFamily> {
    KNOWN_CONNECTED.iter().filter(|f| f.k == k || (f.k == 6 && k == 7)).collect()
}
