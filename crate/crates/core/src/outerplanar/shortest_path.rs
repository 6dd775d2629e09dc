use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::DistanceOracle;

/// Some shortest path from `a` to `b` using only members of the
/// self-contained set `set`.
///
/// Splits at a midpoint `c` on a shortest path (smallest id at distance
/// `floor(d(a,b)/2)` from `a`) and recurses on each half, so the set shrinks
/// to the interval between the endpoints after the first level.
pub fn shortest_path<O: DistanceOracle + ?Sized>(oracle: &mut O, a: Vertex, b: Vertex, set: &[Vertex]) -> Result<Vec<Vertex>> {
    if a == b {
        return Ok(vec![a]);
    }
    let dab = oracle.query(a, b)?;
    if dab == 1 {
        return Ok(vec![a, b]);
    }
    let to_a = oracle.query_column(set, a)?;
    let to_b = oracle.query_column(set, b)?;
    let interval: Vec<(Vertex, u32)> =
        set.iter().zip(to_a.iter().zip(&to_b)).filter(|&(_, (&da, &db))| da + db == dab).map(|(&u, (&da, _))| (u, da)).collect();
    let half = dab / 2;
    let c = interval
        .iter()
        .filter(|&&(_, da)| da == half)
        .map(|&(u, _)| u)
        .min()
        .ok_or_else(|| Error::Structural(format!("no midpoint between {a} and {b} inside the set")))?;
    let mut first: Vec<Vertex> = interval.iter().filter(|&&(_, da)| da < half).map(|&(u, _)| u).collect();
    let mut second: Vec<Vertex> = interval.iter().filter(|&&(_, da)| da > half).map(|&(u, _)| u).collect();
    first.push(c);
    second.push(c);

    let mut path = shortest_path(oracle, a, c, &first)?;
    let tail = shortest_path(oracle, c, b, &second)?;
    path.extend_from_slice(&tail[1..]);
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, f6};
    use crate::graph::{all_pairs_distances, Graph};
    use crate::oracle::CountingOracle;

    fn check(g: &Graph, path: &[Vertex], a: Vertex, b: Vertex) {
        let d = all_pairs_distances(g).unwrap();
        assert_eq!(path.first(), Some(&a));
        assert_eq!(path.last(), Some(&b));
        assert_eq!(path.len() as u32, d.get(a, b) + 1);
        for w in path.windows(2) {
            assert!(g.has_edge(w[0], w[1]), "{path:?}");
        }
    }

    #[test]
    fn trivial_endpoints() {
        let g = f6();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let all: Vec<_> = (0..6).collect();
        assert_eq!(shortest_path(&mut o, 3, 3, &all).unwrap(), vec![3]);
        assert_eq!(shortest_path(&mut o, 0, 1, &all).unwrap(), vec![0, 1]);
    }

    #[test]
    fn f6_a_to_e() {
        let g = f6();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let p = shortest_path(&mut o, 0, 4, &(0..6).collect::<Vec<_>>()).unwrap();
        check(&g, &p, 0, 4);
        assert_eq!(p, vec![0, 2, 3, 4]);
    }

    #[test]
    fn long_cycle() {
        let g = cycle(17);
        let all: Vec<_> = (0..17).collect();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        for b in 0..17 {
            let p = shortest_path(&mut o, 0, b, &all).unwrap();
            check(&g, &p, 0, b);
        }
    }
}
