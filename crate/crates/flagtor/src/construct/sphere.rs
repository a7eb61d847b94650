//! The sphere side `Y_2`: flag triangulations `T_i` of the 2-sphere grown by
//! flag bistellar 0-moves, square holes inserted into `k` faces (plain
//! subdivision of the remaining `delta`), and replacement of every degree-14
//! vertex by two degree-9 vertices, ending with `maxdeg <= 12`.

use std::collections::BTreeMap;

use crate::complex::{clique_complex, FVector, SimplicialComplex};
use crate::graph::{Graph, VertexId};
use crate::homology::{homology, square_cycle, BoundarySolver, HomologyGroup};
use crate::{Error, Int, Result};

use super::{expected_y2_fvector, VertexName};

pub struct SphereStage {
    pub complex: SimplicialComplex,
    pub graph: Graph,
    pub i: usize,
}

fn stage_graph(i: usize) -> Graph {
    let n = 2 * i as u32 + 4;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for v in 0..4u32 {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    for step in 0..i as u32 {
        // the move acting on face [w_{2s+1}, w_{2s+2}, w_{2s+3}]
        let (s1, s2, s3) = (2 * step + 1, 2 * step + 2, 2 * step + 3);
        edges.retain(|&e| e != (s1, s3));
        let (a, b) = (2 * step + 4, 2 * step + 5);
        edges.extend([(2 * step, a), (s1, a), (s3, a), (s1, b), (s2, b), (s3, b), (a, b)]);
    }
    Graph::new(n, edges).unwrap()
}

/// Flag triangulation `T_i` of the sphere: `i` flag bistellar 0-moves applied
/// to the boundary of the 3-simplex. Verified: f-vector `(2i+4, 6i+6, 4i+4)`,
/// `maxdeg <= 6`, `H_1 = 0`, `H_2 = Z`.
pub fn sphere_stage(i: usize) -> Result<SphereStage> {
    let graph = stage_graph(i);
    let complex = clique_complex(&graph, Some(2));
    let fv = complex.f_vector();
    let expected = FVector(vec![2 * i + 4, 6 * i + 6, 4 * i + 4]);
    if fv != expected {
        return Err(Error::ConstructionIntegrity(format!(
            "T_{i}: f-vector {fv}, expected {expected}"
        )));
    }
    if complex.max_degree() > 6 {
        return Err(Error::ConstructionIntegrity(format!(
            "T_{i}: maxdeg {} exceeds 6",
            complex.max_degree()
        )));
    }
    let h1 = homology(&complex, 1, false);
    let h2 = homology(&complex, 2, false);
    if h1 != HomologyGroup::free(0) || h2 != HomologyGroup::free(1) {
        return Err(Error::ConstructionIntegrity(format!(
            "T_{i}: homology H_1 = {h1}, H_2 = {h2}; expected a sphere"
        )));
    }
    Ok(SphereStage { complex, graph, i })
}

/// Consistent orientation of a closed triangulated surface, by propagation
/// over the dual graph: adjacent faces traverse their shared edge in opposite
/// directions.
fn orient_faces(faces: &[Vec<VertexId>]) -> Result<Vec<[VertexId; 3]>> {
    let mut edge_to_faces: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for (a, b) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            edge_to_faces.entry((a, b)).or_default().push(fi);
        }
    }
    if edge_to_faces.values().any(|v| v.len() != 2) {
        return Err(Error::ConstructionIntegrity(
            "not a closed surface: some edge is not in exactly two faces".into(),
        ));
    }
    let directed = |o: &[VertexId; 3]| [(o[0], o[1]), (o[1], o[2]), (o[2], o[0])];
    let mut orient: Vec<Option<[VertexId; 3]>> = vec![None; faces.len()];
    orient[0] = Some([faces[0][0], faces[0][1], faces[0][2]]);
    let mut queue = vec![0usize];
    while let Some(fi) = queue.pop() {
        let of = orient[fi].unwrap();
        for (a, b) in [(of[0], of[1]), (of[1], of[2]), (of[2], of[0])] {
            let key = (a.min(b), a.max(b));
            for &gj in &edge_to_faces[&key] {
                if gj == fi || orient[gj].is_some() {
                    continue;
                }
                let t = &faces[gj];
                // choose the orientation traversing (a, b) as (b, a)
                let fwd = [t[0], t[1], t[2]];
                let chosen = if directed(&fwd).contains(&(b, a)) {
                    fwd
                } else {
                    [t[0], t[2], t[1]]
                };
                debug_assert!(directed(&chosen).contains(&(b, a)));
                orient[gj] = Some(chosen);
                queue.push(gj);
            }
        }
    }
    orient
        .into_iter()
        .map(|o| o.ok_or_else(|| Error::ConstructionIntegrity("surface not connected".into())))
        .collect()
}

/// `Y_2` and its designated hole squares (also the intermediate stage before
/// degree-14 replacement, exposed for the degree-table checks).
pub struct HoledSphere {
    pub complex: SimplicialComplex,
    pub names: Vec<VertexName>,
    /// Hole boundaries `tau_1 .. tau_k` in traversal order.
    pub taus: Vec<[VertexId; 4]>,
    pub k: usize,
    pub delta: usize,
}

/// The sphere with `k` square holes before degree-14 replacement: square
/// insertion on the first `k` faces of `T_i` (`i = floor((k-1)/4)`) in the
/// fixed ordering, plain subdivision of the remaining `delta`.
///
/// Face ordering: lexicographic on sorted vertex triples, except that the
/// three named subdivision targets (`[w_{2i}, w_{2i+1}, w_{2i+3}]`, then
/// `[w_{2i-1}, w_{2i+2}, w_{2i+3}]`, then `[w_{2i+1}, w_{2i+2}, w_{2i+3}]`
/// last) are forced to the end so they receive the `delta` subdivisions.
pub fn sphere_with_holes_raw(k: usize) -> Result<HoledSphere> {
    if k == 0 {
        return Err(Error::invalid("at least one hole square required"));
    }
    let i = (k - 1) / 4;
    let delta = (4 - k % 4) % 4;
    let stage = sphere_stage(i)?;
    let nt = stage.complex.n();
    let oriented = orient_faces(stage.complex.faces(2))?;
    let oriented_of: BTreeMap<Vec<VertexId>, [VertexId; 3]> = stage
        .complex
        .faces(2)
        .iter()
        .cloned()
        .zip(oriented)
        .collect();

    // ordering with the named faces forced last
    let i32_ = i as i64;
    let named: Vec<Vec<VertexId>> = [
        vec![2 * i32_, 2 * i32_ + 1, 2 * i32_ + 3],
        vec![2 * i32_ - 1, 2 * i32_ + 2, 2 * i32_ + 3],
        vec![2 * i32_ + 1, 2 * i32_ + 2, 2 * i32_ + 3],
    ]
    .into_iter()
    .filter(|f| f.iter().all(|&v| v >= 0))
    .map(|f| {
        let mut g: Vec<VertexId> = f.iter().map(|&v| v as VertexId).collect();
        g.sort_unstable();
        g
    })
    .filter(|f| oriented_of.contains_key(f))
    .collect();
    let mut order: Vec<Vec<VertexId>> = stage
        .complex
        .faces(2)
        .iter()
        .filter(|f| !named.contains(f))
        .cloned()
        .collect();
    order.extend(named);
    debug_assert_eq!(order.len(), k + delta);
    let (squared, subdivided) = order.split_at(k);

    // vertex ids: w_j = j, u_l = nt + l, w'_{s,t} = nt + 4k + edge rank
    let k32 = k as u32;
    let mid_rank: BTreeMap<(VertexId, VertexId), VertexId> = stage
        .graph
        .edges()
        .iter()
        .enumerate()
        .map(|(r, &e)| (e, nt + 4 * k32 + r as u32))
        .collect();
    let mid = |a: VertexId, b: VertexId| mid_rank[&(a.min(b), a.max(b))];
    let n = nt + 4 * k32 + stage.graph.edge_count() as u32;

    let mut faces: Vec<Vec<VertexId>> = Vec::new();
    let mut push = |f: [VertexId; 3]| {
        let mut v = f.to_vec();
        v.sort_unstable();
        faces.push(v);
    };
    let mut taus: Vec<[VertexId; 4]> = Vec::new();
    for (j, face) in squared.iter().enumerate() {
        // rotate the consistent orientation to start at the least vertex
        let mut o = oriented_of[face];
        while o[0] != *face.iter().min().unwrap() {
            o = [o[1], o[2], o[0]];
        }
        let [r, x, y] = o;
        let u = |t: u32| nt + 4 * j as u32 + t;
        let (u0, u1, u2, u3) = (u(0), u(1), u(2), u(3));
        push([x, mid(x, y), u1]);
        push([x, u1, mid(r, x)]);
        push([mid(r, x), u1, u0]);
        push([mid(r, x), u0, r]);
        push([r, u0, u3]);
        push([mid(r, y), u3, r]);
        push([mid(r, y), u2, u3]);
        push([y, u2, mid(r, y)]);
        push([y, mid(x, y), u2]);
        push([mid(x, y), u1, u2]);
        taus.push([u0, u1, u2, u3]);
    }
    // Plain subdivision fills each face with its midpoint triangle. At i = 0
    // with delta = 3 the three subdivided faces surround one degree-3 vertex
    // and their midpoint triangles would leave an empty 3-clique, so the last
    // face is fanned from the midpoint of the edge opposite that vertex
    // instead (same counts, still a triangulated disk).
    let fan_fix = i == 0 && delta == 3;
    for (idx, face) in subdivided.iter().enumerate() {
        let (a, b, c) = (face[0], face[1], face[2]);
        if fan_fix && idx + 1 == subdivided.len() {
            let common = *subdivided[0]
                .iter()
                .find(|v| subdivided.iter().all(|f| f.contains(v)))
                .expect("three faces around one vertex");
            let others: Vec<VertexId> = face.iter().copied().filter(|&v| v != common).collect();
            let apex = mid(others[0], others[1]);
            push([apex, others[0], mid(others[0], common)]);
            push([apex, mid(others[0], common), common]);
            push([apex, common, mid(others[1], common)]);
            push([apex, mid(others[1], common), others[1]]);
        } else {
            push([a, mid(a, b), mid(a, c)]);
            push([b, mid(a, b), mid(b, c)]);
            push([c, mid(a, c), mid(b, c)]);
            push([mid(a, b), mid(a, c), mid(b, c)]);
        }
    }

    let complex = SimplicialComplex::from_faces(n, faces)?;
    let mut names: Vec<VertexName> = (0..nt).map(VertexName::W).collect();
    names.extend((0..4 * k32).map(VertexName::U));
    names.extend(stage.graph.edges().iter().map(|&(s, t)| VertexName::WPrime(s, t)));

    let expected_faces = 10 * k + 4 * delta;
    if complex.face_count(2) != expected_faces || !complex.is_strictly_flag() {
        return Err(Error::ConstructionIntegrity(format!(
            "holed sphere k={k}: {} faces (expected {expected_faces}), flag = {}",
            complex.face_count(2),
            complex.is_strictly_flag()
        )));
    }
    Ok(HoledSphere { complex, names, taus, k, delta })
}

/// Replaces one degree-14 vertex: its link is a 14-gon with six `w'` and
/// eight `u` vertices; the two `w'` at cyclic distance 7 (lexicographically
/// least name pair) split it into two arcs, and each replacement vertex is
/// coned over its closed arc, plus two bridging triangles through the new
/// edge. Ids are re-densified; returns the remap.
fn replace_degree14(
    complex: &SimplicialComplex,
    names: &mut Vec<VertexName>,
    wj: VertexId,
) -> Result<(SimplicialComplex, Vec<VertexId>)> {
    let star: Vec<&Vec<VertexId>> =
        complex.faces(2).iter().filter(|f| f.contains(&wj)).collect();
    if star.len() != 14 {
        return Err(Error::ConstructionIntegrity(format!(
            "degree-14 vertex {wj} lies in {} faces",
            star.len()
        )));
    }
    // link cycle
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for f in &star {
        let rest: Vec<VertexId> = f.iter().copied().filter(|&v| v != wj).collect();
        adj.entry(rest[0]).or_default().push(rest[1]);
        adj.entry(rest[1]).or_default().push(rest[0]);
    }
    let start = *adj.keys().next().unwrap();
    let mut cycle = vec![start, *adj[&start].iter().min().unwrap()];
    while cycle.len() < 14 {
        let last = cycle[cycle.len() - 1];
        let prev = cycle[cycle.len() - 2];
        let next = *adj[&last].iter().find(|&&z| z != prev).ok_or_else(|| {
            Error::ConstructionIntegrity("link of degree-14 vertex is not a cycle".into())
        })?;
        cycle.push(next);
    }
    // antipodal w' pair, least by name
    let wprimes: Vec<(usize, VertexId)> = cycle
        .iter()
        .enumerate()
        .filter(|(_, &v)| matches!(names[v as usize], VertexName::WPrime(..)))
        .map(|(p, &v)| (p, v))
        .collect();
    let mut pairs: Vec<(VertexName, VertexName, usize, usize)> = Vec::new();
    for &(p1, v1) in &wprimes {
        for &(p2, v2) in &wprimes {
            if v1 < v2 && (p2 + 14 - p1) % 14 == 7 {
                let (n1, n2) = (names[v1 as usize], names[v2 as usize]);
                pairs.push(if n1 <= n2 { (n1, n2, p1, p2) } else { (n2, n1, p2, p1) });
            }
        }
    }
    pairs.sort();
    let &(_, _, pa, pb) = pairs.first().ok_or_else(|| {
        Error::ConstructionIntegrity(format!(
            "no antipodal w' pair in the link of vertex {wj}"
        ))
    })?;

    let arc = |from: usize, to: usize| -> Vec<VertexId> {
        let len = (to + 14 - from) % 14;
        (0..=len).map(|t| cycle[(from + t) % 14]).collect()
    };
    let (arc1, arc2) = (arc(pa, pb), arc(pb, pa));
    let base = match names[wj as usize] {
        VertexName::W(j) => j,
        other => {
            return Err(Error::ConstructionIntegrity(format!(
                "degree-14 vertex is {other}, expected a w vertex"
            )))
        }
    };
    let z1 = complex.n();
    let z2 = complex.n() + 1;
    names.push(VertexName::Split { base, half: 1 });
    names.push(VertexName::Split { base, half: 2 });

    let mut faces: Vec<Vec<VertexId>> = complex
        .faces(2)
        .iter()
        .filter(|f| !f.contains(&wj))
        .cloned()
        .collect();
    for (z, arc) in [(z1, &arc1), (z2, &arc2)] {
        for w in arc.windows(2) {
            let mut f = vec![z, w[0], w[1]];
            f.sort_unstable();
            faces.push(f);
        }
    }
    for endpoint in [arc1[0], *arc1.last().unwrap()] {
        let mut f = vec![z1, z2, endpoint];
        f.sort_unstable();
        faces.push(f);
    }

    // densify: wj drops out
    let mut used: Vec<VertexId> = faces.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut remap = vec![u32::MAX; (complex.n() + 2) as usize];
    for (new, &old) in used.iter().enumerate() {
        remap[old as usize] = new as u32;
    }
    let renamed: Vec<VertexName> = used.iter().map(|&old| names[old as usize]).collect();
    *names = renamed;
    let faces: Vec<Vec<VertexId>> = faces
        .iter()
        .map(|f| {
            let mut g: Vec<VertexId> = f.iter().map(|&v| remap[v as usize]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    Ok((SimplicialComplex::from_faces(used.len() as u32, faces)?, remap))
}

/// The finished `Y_2`: every degree-14 vertex of the raw holed sphere
/// replaced by two degree-9 vertices. Verified: reference f-vector,
/// `maxdeg <= 12`, flag, `H_1 = Z^{k-1}` free, and `tau_1 + ... + tau_k`
/// bounds (exact solve).
pub fn punctured_sphere(k: usize) -> Result<HoledSphere> {
    let mut y = sphere_with_holes_raw(k)?;
    loop {
        let degrees = y.complex.degrees();
        let Some(wj) = degrees.iter().position(|&d| d == 14) else { break };
        let (complex, remap) = replace_degree14(&y.complex, &mut y.names, wj as VertexId)?;
        for square in y.taus.iter_mut() {
            for v in square.iter_mut() {
                *v = remap[*v as usize];
            }
        }
        y.complex = complex;
    }

    let fv = y.complex.f_vector();
    let expected = expected_y2_fvector(k);
    if fv != expected {
        return Err(Error::ConstructionIntegrity(format!(
            "Y_2 k={k}: f-vector {fv}, expected {expected}"
        )));
    }
    if y.complex.max_degree() > 12 {
        return Err(Error::ConstructionIntegrity(format!(
            "Y_2 k={k}: maxdeg {} exceeds 12",
            y.complex.max_degree()
        )));
    }
    if !y.complex.is_strictly_flag() {
        return Err(Error::ConstructionIntegrity(format!("Y_2 k={k}: not flag")));
    }
    let h1 = homology(&y.complex, 1, false);
    if h1 != HomologyGroup::free(k - 1) {
        return Err(Error::ConstructionIntegrity(format!(
            "Y_2 k={k}: H_1 = {h1}, expected Z^{}",
            k - 1
        )));
    }
    let solver = BoundarySolver::new(&y.complex);
    let mut total: Vec<Int> = vec![Int::from(0); y.complex.face_count(1)];
    for &square in &y.taus {
        for (slot, coeff) in square_cycle(&y.complex, square)?.iter().enumerate() {
            total[slot] += coeff;
        }
    }
    if !solver.bounds(&total) {
        return Err(Error::ConstructionIntegrity(format!(
            "Y_2 k={k}: tau_1 + ... + tau_k is not a boundary"
        )));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_zero_is_simplex_boundary() {
        let t0 = sphere_stage(0).unwrap();
        assert_eq!(t0.complex.f_vector(), FVector(vec![4, 6, 4]));
        assert!(t0.complex.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn stage_two_degree_split() {
        let t2 = sphere_stage(2).unwrap();
        assert_eq!(t2.complex.f_vector(), FVector(vec![8, 18, 12]));
        let mut degs = t2.complex.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![4, 4, 4, 4, 5, 5, 5, 5]);
    }

    #[test]
    fn stage_five_degree_six_vertices() {
        let t5 = sphere_stage(5).unwrap();
        assert_eq!(t5.complex.f_vector(), FVector(vec![14, 36, 24]));
        let six: Vec<usize> = t5
            .complex
            .degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 6)
            .map(|(v, _)| v)
            .collect();
        assert_eq!(six, vec![4, 5, 6, 7, 8, 9]); // exactly w_4 .. w_{2i-1}
    }

    #[test]
    fn one_hole_counts() {
        let y = punctured_sphere(1).unwrap();
        assert_eq!(y.complex.f_vector(), FVector(vec![14, 35, 22]));
        assert_eq!(y.delta, 3);
    }

    #[test]
    fn sixteen_holes_trigger_replacement() {
        let y = punctured_sphere(16).unwrap();
        assert_eq!(y.complex.f_vector(), FVector(vec![100, 278, 164]));
        assert!(y.complex.max_degree() <= 12);
        // raw stage still has the degree-14 vertices
        let raw = sphere_with_holes_raw(16).unwrap();
        assert!(raw.complex.degrees().contains(&14));
    }

    #[test]
    fn two_holes_h1_and_relation() {
        let y = punctured_sphere(2).unwrap();
        assert_eq!(homology(&y.complex, 1, false), HomologyGroup::free(1));
        assert_eq!(y.taus.len(), 2);
    }

    #[test]
    fn zero_holes_rejected() {
        assert!(punctured_sphere(0).is_err());
        assert!(sphere_with_holes_raw(0).is_err());
    }
}
