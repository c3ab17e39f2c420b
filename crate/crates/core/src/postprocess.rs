//! Isolated edge elimination.

use rayon::prelude::*;

use crate::types::{EdgeMap, EDGE};

/// Clears every edge pixel that has no edge among its eight neighbours.
/// Neighbours outside the map count as non-edges. All decisions read the
/// input map, so the result does not depend on visiting order.
pub fn eliminate_isolated(map: &EdgeMap) -> EdgeMap {
    let (rows, cols) = (map.rows(), map.cols());
    let mut out = map.clone();
    out.values_mut()
        .par_chunks_mut(cols)
        .enumerate()
        .for_each(|(r, out_row)| {
            let r0 = r.saturating_sub(1);
            let r1 = (r + 1).min(rows - 1);
            for (c, v) in out_row.iter_mut().enumerate() {
                if *v != EDGE {
                    continue;
                }
                let c0 = c.saturating_sub(1);
                let c1 = (c + 1).min(cols - 1);
                let has_neighbour = (r0..=r1)
                    .any(|nr| (c0..=c1).any(|nc| (nr, nc) != (r, c) && map.is_edge(nr, nc)));
                if !has_neighbour {
                    *v = 0;
                }
            }
        });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_centre_pixel_is_removed() {
        let map = EdgeMap::from_fn(3, 3, |r, c| (r, c) == (1, 1));
        assert_eq!(eliminate_isolated(&map).edge_count(), 0);
    }

    #[test]
    fn diagonal_pair_survives() {
        let map = EdgeMap::from_fn(3, 3, |r, c| (r, c) == (0, 0) || (r, c) == (1, 1));
        assert_eq!(eliminate_isolated(&map), map);
    }

    #[test]
    fn corners_and_single_pixel_maps() {
        let map = EdgeMap::from_fn(4, 5, |r, c| (r, c) == (0, 0) || (r, c) == (3, 4));
        assert_eq!(eliminate_isolated(&map).edge_count(), 0);
        let one = EdgeMap::from_fn(1, 1, |_, _| true);
        assert_eq!(eliminate_isolated(&one).edge_count(), 0);
        let pair = EdgeMap::from_fn(1, 2, |_, _| true);
        assert_eq!(eliminate_isolated(&pair), pair);
    }

    #[test]
    fn non_adjacent_pixels_are_both_removed() {
        let map = EdgeMap::from_fn(1, 5, |_, c| c == 0 || c == 2);
        assert_eq!(eliminate_isolated(&map).edge_count(), 0);
    }
}
