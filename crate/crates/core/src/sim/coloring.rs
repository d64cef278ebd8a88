use crate::f2_linalg::BitMatrix;

/// Proper edge coloring of the Tanner graph of `h` with Δ colors, Δ the
/// larger of the maximum row and column weight. Edges are (check, qubit);
/// each returned layer is one color class.
pub fn edge_coloring(h: &BitMatrix) -> Vec<Vec<(usize, usize)>> {
    let delta = h.max_row_weight().max(h.max_col_weight());
    let mut at_check = vec![vec![None::<usize>; delta]; h.rows()];
    let mut at_qubit = vec![vec![None::<usize>; delta]; h.cols()];
    for (u, v) in h.nonzeros() {
        let a = (0..delta).find(|&c| at_check[u][c].is_none()).expect("free colour at check");
        let b = (0..delta).find(|&c| at_qubit[v][c].is_none()).expect("free colour at qubit");
        if at_qubit[v][a].is_some() {
            // swap a and b along the alternating path leaving v on colour a
            let mut path = Vec::new();
            let (mut node, mut on_qubit, mut col) = (v, true, a);
            loop {
                let next = if on_qubit { at_qubit[node][col] } else { at_check[node][col] };
                let Some(w) = next else { break };
                path.push(if on_qubit { (w, node, col) } else { (node, w, col) });
                node = w;
                on_qubit = !on_qubit;
                col = if col == a { b } else { a };
            }
            for &(cu, cv, c) in &path {
                at_check[cu][c] = None;
                at_qubit[cv][c] = None;
            }
            for &(cu, cv, c) in &path {
                let d = if c == a { b } else { a };
                at_check[cu][d] = Some(cv);
                at_qubit[cv][d] = Some(cu);
            }
        }
        debug_assert!(at_check[u][a].is_none() && at_qubit[v][a].is_none());
        at_check[u][a] = Some(v);
        at_qubit[v][a] = Some(u);
    }
    let mut layers = vec![Vec::new(); delta];
    for (u, slots) in at_check.iter().enumerate() {
        for (c, v) in slots.iter().enumerate() {
            if let Some(v) = v {
                layers[c].push((u, *v));
            }
        }
    }
    layers.retain(|l| !l.is_empty());
    layers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodePair;
    use std::collections::HashSet;

    fn proper(h: &BitMatrix, layers: &[Vec<(usize, usize)>]) {
        let mut all = HashSet::new();
        for l in layers {
            let mut seen_c = HashSet::new();
            let mut seen_q = HashSet::new();
            for &(u, v) in l {
                assert!(seen_c.insert(u) && seen_q.insert(v));
                assert!(all.insert((u, v)));
            }
        }
        assert_eq!(all.len(), h.count_ones());
    }

    #[test]
    fn registry_codes_reach_max_degree() {
        for name in ["bt-27", "bt-45", "pentagon"] {
            let pair = CodePair::load(name).unwrap();
            for h in [&pair.code_3d.hx, &pair.code_3d.hz, &pair.code_2d.hx, &pair.code_2d.hz] {
                let layers = edge_coloring(h);
                proper(h, &layers);
                assert_eq!(layers.len(), h.max_row_weight().max(h.max_col_weight()));
            }
        }
    }

    #[test]
    fn single_edge() {
        let h = BitMatrix::from_strs(&["0010"]);
        assert_eq!(edge_coloring(&h), vec![vec![(0, 2)]]);
    }
}
