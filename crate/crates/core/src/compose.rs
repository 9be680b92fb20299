//! Wilson's fundamental construction: a PENT(k, r_i, w) placed on every
//! group of a k-GDD gives a PENT(k, R + (N-1)(w+1)/(k-1), w), where
//! `R = sum r_i` and `N` is the number of groups.

use thiserror::Error;

use crate::designs::{verify_gdd, Gdd};
use crate::incidence::{Block, Geometry, Point};
use crate::params::PentParams;
use crate::pent::verify_pent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("GDD does not verify: {0}")]
    GddInvalid(String),
    #[error("{groups} groups but {ingredients} ingredients")]
    IngredientCount { groups: usize, ingredients: usize },
    #[error("group {group} has {group_size} points but its ingredient has {ingredient_size}")]
    SizeMismatch { group: usize, group_size: usize, ingredient_size: usize },
    #[error("mixed parameters: {0}")]
    MixedParameters(String),
    #[error("ingredient {index} is not a PENT: {reason}")]
    IngredientInvalid { index: usize, reason: String },
}

/// `ingredients[i]` is placed on the `i`-th group in the GDD's canonical
/// order (groups sorted by their smallest point); its `j`-th point goes to
/// the `j`-th smallest point of the group.
pub fn wilson_compose(gdd: &Gdd, ingredients: &[Geometry]) -> Result<Geometry, ComposeError> {
    if let Some(c) = verify_gdd(gdd).failures().next() {
        return Err(ComposeError::GddInvalid(format!("{}: {}", c.name, c.detail)));
    }
    let groups = gdd.groups();
    if groups.len() != ingredients.len() {
        return Err(ComposeError::IngredientCount { groups: groups.len(), ingredients: ingredients.len() });
    }
    let k = gdd.k();
    let mut w = None;
    let mut total_r = 0;
    for (index, (group, g)) in groups.iter().zip(ingredients).enumerate() {
        if g.v() != group.len() {
            return Err(ComposeError::SizeMismatch { group: index, group_size: group.len(), ingredient_size: g.v() });
        }
        let report = verify_pent(g);
        if let Some(c) = report.failures().next() {
            return Err(ComposeError::IngredientInvalid { index, reason: format!("{}: {}", c.name, c.detail) });
        }
        let (gk, gr, gw) = (report.params.k, report.params.r.unwrap_or(0), report.params.w.unwrap_or(0));
        if gk != k {
            return Err(ComposeError::MixedParameters(format!("ingredient {index} has lines of size {gk}, the GDD blocks {k}")));
        }
        if *w.get_or_insert(gw) != gw {
            return Err(ComposeError::MixedParameters(format!("ingredient {index} has w = {gw}, ingredient 0 has w = {}", w.unwrap_or(0))));
        }
        total_r += gr;
    }
    let w = w.unwrap_or(0);
    if (w + 1) % (k - 1) != 0 {
        return Err(ComposeError::MixedParameters(format!("k - 1 = {} does not divide w + 1 = {}", k - 1, w + 1)));
    }
    let r = total_r + (groups.len() - 1) * (w + 1) / (k - 1);

    let mut lines: Vec<Block> = gdd.blocks().to_vec();
    for (group, g) in groups.iter().zip(ingredients) {
        lines.extend(g.lines().iter().map(|l| l.relabel(|p: Point| group[p as usize])));
    }
    let claim = PentParams::new(k, r, w).expect("k >= 2");
    Ok(Geometry::with_block_size(gdd.v(), k, lines).expect("GDD points and group labels are in range").with_claim(claim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::td;
    use crate::graphs::{girth, Graph};
    use crate::pent::deficiency;

    fn pentagon() -> Geometry {
        Geometry::new(5, (0..5).map(|i| Block::from_distinct(vec![i, (i + 1) % 5])).collect()).unwrap()
    }

    fn two_groups_of_five() -> Gdd {
        let blocks = (0..5).flat_map(|a| (5..10).map(move |b| Block::from_distinct(vec![a, b]))).collect();
        Gdd::new(10, 2, vec![(0..5).collect(), (5..10).collect()], blocks)
    }

    #[test]
    fn two_pentagons_over_a_complete_bipartite_gdd() {
        let g = wilson_compose(&two_groups_of_five(), &[pentagon(), pentagon()]).unwrap();
        assert_eq!((g.v(), g.lines().len()), (10, 35));
        assert_eq!(g.claimed(), Some(PentParams { k: 2, r: 7, w: 2 }));
        let report = verify_pent(&g);
        assert!(report.overall, "{}", report.to_json());
        let d = deficiency(&g).unwrap().graph;
        // The deficiency graph of a pentagon is its pentagram.
        let expected = Graph::from_edges(10, (0..5).flat_map(|i| [(i, (i + 2) % 5), (i + 5, (i + 2) % 5 + 5)])).unwrap();
        assert_eq!(d, expected);
        assert_eq!(girth(&d), Some(5));
    }

    #[test]
    fn ingredient_lines_follow_the_group_order() {
        let blocks = (0..5).flat_map(|a| (0..5).map(move |b| Block::from_distinct(vec![2 * a, 2 * b + 1]))).collect();
        let gdd = Gdd::new(10, 2, vec![(0..5).map(|i| 2 * i + 1).collect(), (0..5).map(|i| 2 * i).collect()], blocks);
        let g = wilson_compose(&gdd, &[pentagon(), pentagon()]).unwrap();
        assert!(g.line_set().contains(&Block::from_distinct(vec![0, 2])));
        assert!(g.line_set().contains(&Block::from_distinct(vec![0, 8])));
        assert!(verify_pent(&g).overall);
    }

    #[test]
    fn rejects_bad_inputs() {
        let gdd = two_groups_of_five();
        assert!(matches!(wilson_compose(&gdd, &[pentagon()]), Err(ComposeError::IngredientCount { .. })));
        let square = Geometry::new(4, (0..4).map(|i| Block::from_distinct(vec![i, (i + 1) % 4])).collect()).unwrap();
        assert!(matches!(wilson_compose(&gdd, &[pentagon(), square]), Err(ComposeError::SizeMismatch { group: 1, .. })));
        let mut blocks = gdd.blocks().to_vec();
        blocks.pop();
        let broken = Gdd::new(10, 2, gdd.groups().to_vec(), blocks);
        assert!(matches!(wilson_compose(&broken, &[pentagon(), pentagon()]), Err(ComposeError::GddInvalid(_))));
        // K_5 as a PENT(2, 4, 0) next to a pentagon: w differs.
        let k5 = Geometry::new(5, Graph::complete(5).edges().map(|(a, b)| Block::from_distinct(vec![a, b])).collect()).unwrap();
        assert!(matches!(wilson_compose(&gdd, &[pentagon(), k5]), Err(ComposeError::MixedParameters(_))));
        let t = td(3, 5).unwrap();
        assert!(matches!(
            wilson_compose(&t, &[pentagon(), pentagon(), pentagon()]),
            Err(ComposeError::MixedParameters(_))
        ));
    }
}
