use super::Colouring;
use crate::error::{malformed, Result};
use crate::graph::Graph;

/// Searches for a path `v_1 .. v_2h` with `h ≤ max_half` whose colour
/// sequence repeats (`c(v_i) = c(v_{i+h})` for all `i`). Returns the path, or
/// `None` if there is none up to that length.
pub fn check_nonrepetitive(
    g: &Graph,
    c: &Colouring,
    max_half: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if c.len() != n {
        return malformed(format!(
            "colouring covers {} vertices, graph has {n}",
            c.len()
        ));
    }
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        if extend(g, c, 2 * max_half, start, &mut path, &mut on_path) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn is_square(c: &Colouring, path: &[usize]) -> bool {
    let h = path.len() / 2;
    path.len() % 2 == 0 && h > 0 && (0..h).all(|i| c.colour(path[i]) == c.colour(path[i + h]))
}

fn extend(
    g: &Graph,
    c: &Colouring,
    max_len: usize,
    v: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    path.push(v);
    on_path[v] = true;
    if is_square(c, path) {
        return true;
    }
    if path.len() < max_len {
        for &w in g.neighbors(v) {
            if !on_path[w] && extend(g, c, max_len, w, path, on_path) {
                return true;
            }
        }
    }
    path.pop();
    on_path[v] = false;
    false
}
