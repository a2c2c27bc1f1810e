//! Induced-embedding checks and a backtracking search for induced copies.

use super::{bits, Graph, VertexMap};
use crate::error::{Error, Result};

/// Whether `map` sends `pattern` onto an induced copy inside `host`: for every
/// pair of pattern vertices, adjacency holds in the pattern exactly when it
/// holds between the images.
pub fn is_induced_embedding(host: &Graph, pattern: &Graph, map: &VertexMap) -> Result<bool> {
    if map.pattern_size() != pattern.n() {
        return Err(Error::Parameter(format!(
            "map covers {} vertices but the pattern has {}",
            map.pattern_size(),
            pattern.n()
        )));
    }
    if let Some(&bad) = map.image().iter().find(|&&h| h >= host.n()) {
        return Err(Error::Parameter(format!(
            "image vertex {bad} outside host of {} vertices",
            host.n()
        )));
    }
    let mut seen = vec![false; host.n()];
    for &h in map.image() {
        if std::mem::replace(&mut seen[h], true) {
            return Ok(false);
        }
    }
    let img = map.image();
    for u in 0..pattern.n() {
        for v in u + 1..pattern.n() {
            if pattern.has_edge(u, v) != host.has_edge(img[u], img[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finds some induced embedding of `pattern` into `host`, or `None` when no
/// induced copy exists.
///
/// Pattern vertices are placed highest degree first and then grown along
/// adjacency, so that every placement is constrained by as many earlier ones
/// as possible. Candidates are filtered word-parallel: a host vertex must be
/// unused, adjacent to the images of placed pattern neighbours, non-adjacent
/// to the images of placed non-neighbours, and of at least the pattern
/// vertex's degree. The search is deterministic.
pub fn find_induced_embedding(host: &Graph, pattern: &Graph) -> Option<VertexMap> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    if k == 0 {
        return Some(VertexMap::identity(0));
    }
    let order = placement_order(pattern);
    let words = host.words();
    let mut full = vec![0u64; words];
    for h in 0..host.n() {
        full[h / 64] |= 1 << (h % 64);
    }
    let mut search = Search {
        host,
        pattern,
        order: &order,
        image: vec![usize::MAX; k],
        used: vec![0u64; words],
        full,
    };
    if search.extend(0) {
        VertexMap::new(search.image).ok()
    } else {
        None
    }
}

/// Counts every induced embedding (as injective maps, not up to automorphism).
/// Intended for small oracles and tests.
pub fn count_induced_embeddings(host: &Graph, pattern: &Graph) -> u64 {
    fn rec(host: &Graph, pattern: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let u = image.len();
        if u == pattern.n() {
            return 1;
        }
        let mut total = 0;
        for h in 0..host.n() {
            if used[h] {
                continue;
            }
            if (0..u).all(|w| pattern.has_edge(u, w) == host.has_edge(h, image[w])) {
                used[h] = true;
                image.push(h);
                total += rec(host, pattern, image, used);
                image.pop();
                used[h] = false;
            }
        }
        total
    }
    if pattern.n() > host.n() {
        return 0;
    }
    rec(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

fn placement_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in pattern.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<u64>,
    full: Vec<u64>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let mut cand: Vec<u64> = self
            .full
            .iter()
            .zip(&self.used)
            .map(|(f, used)| f & !used)
            .collect();
        for &w in &self.order[..depth] {
            let row = self.host.row(self.image[w]).words();
            if self.pattern.has_edge(u, w) {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= r);
            } else {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= !r);
            }
            if cand.iter().all(|&c| c == 0) {
                return false;
            }
        }
        let need = self.pattern.degree(u);
        for h in bits::ones(&cand).collect::<Vec<_>>() {
            if self.host.degree(h) < need {
                continue;
            }
            self.image[u] = h;
            self.used[h / 64] |= 1 << (h % 64);
            if self.extend(depth + 1) {
                return true;
            }
            self.used[h / 64] &= !(1 << (h % 64));
        }
        self.image[u] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{clique_union, complete, path};

    fn map(v: &[usize]) -> VertexMap {
        VertexMap::new(v.to_vec()).unwrap()
    }

    #[test]
    fn induced_check_examples() {
        let p3 = path(3);
        assert!(is_induced_embedding(&p3, &Graph::empty(2), &map(&[0, 2])).unwrap());
        assert!(!is_induced_embedding(&p3, &Graph::empty(2), &map(&[0, 1])).unwrap());

        let k3 = complete(3);
        let k2k1 = Graph::from_edges(3, [(0, 1)]).unwrap();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert!(!is_induced_embedding(&k3, &k2k1, &map(&perm)).unwrap());
        }
    }

    #[test]
    fn induced_check_rejects_bad_maps() {
        let p3 = path(3);
        assert!(is_induced_embedding(&p3, &Graph::empty(2), &map(&[0, 5])).is_err());
        assert!(is_induced_embedding(&p3, &Graph::empty(3), &map(&[0, 1])).is_err());
    }

    #[test]
    fn find_examples() {
        assert!(find_induced_embedding(&complete(3), &Graph::empty(3)).is_none());
        let m = find_induced_embedding(&path(4), &path(3)).unwrap();
        assert!(is_induced_embedding(&path(4), &path(3), &m).unwrap());
        assert!(find_induced_embedding(&Graph::empty(3), &complete(2)).is_none());
        assert!(find_induced_embedding(&path(2), &path(3)).is_none());
    }

    #[test]
    fn triangles_into_mixed_cliques() {
        // 6 K4, 2 K3, 4 K2, 12 K1: the clique-union host for n = 24, k = 4.
        let mut sizes = vec![4; 6];
        sizes.extend([3, 3, 2, 2, 2, 2]);
        sizes.extend([1; 12]);
        let host = crate::graph::generators::clique_union_of(&sizes);
        assert_eq!(host.n(), 50);
        let g3 = clique_union(24, 3).unwrap();
        let m = find_induced_embedding(&host, &g3).unwrap();
        assert!(is_induced_embedding(&host, &g3, &m).unwrap());
        let g4 = clique_union(24, 4).unwrap();
        assert!(find_induced_embedding(&host, &g4).is_some());
        let g5 = clique_union(25, 5).unwrap();
        assert!(find_induced_embedding(&host, &g5).is_none());
    }

    #[test]
    fn counting_agrees_on_small_cases() {
        // P3 has 2 induced copies of 2K1 (as sets), i.e. 2 ordered maps each.
        assert_eq!(count_induced_embeddings(&path(3), &Graph::empty(2)), 2);
        assert_eq!(count_induced_embeddings(&complete(4), &complete(2)), 12);
        assert_eq!(count_induced_embeddings(&complete(3), &Graph::empty(2)), 0);
    }
}
