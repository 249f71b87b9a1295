//! Site arrangements, their symmetry groups and allowed bipartitions.
//!
//! Sites are indexed from 0 inside the library. Everything that faces a user
//! (display, JSON, CLI) uses the 1-based labels of the figures: the square and
//! polygons are labelled anti-clockwise, the cube has `1 2 3 4` on one face with
//! `j` and `j+4` on a body diagonal, and the octahedron has diagonals
//! `(1,4) (2,5) (3,6)`.
//!
//! In every arrangement with antipodes, diagonal `j` joins site `j` and site
//! `j + K/2`, so the first half of the sites carries the operator inputs and the
//! second half the outputs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    Square,
    Hexagon,
    /// Regular polygon with the given (even) number of vertices.
    Polygon(usize),
    Cube,
    Octahedron,
    Tetrahedron,
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryKind::Square => f.write_str("square"),
            GeometryKind::Hexagon => f.write_str("hexagon"),
            GeometryKind::Polygon(k) => write!(f, "polygon:{k}"),
            GeometryKind::Cube => f.write_str("cube"),
            GeometryKind::Octahedron => f.write_str("octahedron"),
            GeometryKind::Tetrahedron => f.write_str("tetrahedron"),
        }
    }
}

impl FromStr for GeometryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "square" => Ok(GeometryKind::Square),
            "hexagon" => Ok(GeometryKind::Hexagon),
            "cube" => Ok(GeometryKind::Cube),
            "octahedron" => Ok(GeometryKind::Octahedron),
            "tetrahedron" => Ok(GeometryKind::Tetrahedron),
            _ => {
                let count = s
                    .strip_prefix("polygon:")
                    .ok_or_else(|| Error::UnknownGeometry(s.to_string()))?;
                let k: usize = count
                    .parse()
                    .map_err(|_| Error::UnknownGeometry(s.to_string()))?;
                if k < 4 || !k.is_multiple_of(2) {
                    return Err(Error::InvalidPolygon(k));
                }
                Ok(GeometryKind::Polygon(k))
            }
        }
    }
}

impl GeometryKind {
    pub fn site_count(&self) -> usize {
        match self {
            GeometryKind::Square | GeometryKind::Tetrahedron => 4,
            GeometryKind::Hexagon | GeometryKind::Octahedron => 6,
            GeometryKind::Polygon(k) => *k,
            GeometryKind::Cube => 8,
        }
    }
}

/// A bijection on the sites `0..K`; `image[j]` is where site `j` is sent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SitePermutation {
    image: Vec<usize>,
}

impl SitePermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &s in &image {
            if s >= k || seen[s] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[s] = true;
        }
        Ok(Self { image })
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 3, 4, 1]`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{image:?}")));
        }
        Self::new(image.iter().map(|s| s - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Self {
            image: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, site: usize) -> usize {
        self.image[site]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SitePermutation) -> SitePermutation {
        SitePermutation {
            image: other.image.iter().map(|&s| self.image[s]).collect(),
        }
    }

    pub fn inverse(&self) -> SitePermutation {
        let mut inv = vec![0; self.image.len()];
        for (j, &s) in self.image.iter().enumerate() {
            inv[s] = j;
        }
        SitePermutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &s)| j == s)
    }

    /// Moves the value on site `j` to site `image[j]`.
    pub fn permute_values<T: Copy>(&self, values: &[T]) -> Vec<T> {
        let mut out = values.to_vec();
        for (j, &v) in values.iter().enumerate() {
            out[self.image[j]] = v;
        }
        out
    }
}

impl fmt::Display for SitePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        f.write_str(")")
    }
}

/// Closes a set of generators under composition.
///
/// The result is deduplicated and sorted lexicographically by image array.
pub fn symmetry_group_closure(generators: &[SitePermutation]) -> Vec<SitePermutation> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let mut group = BTreeSet::new();
    let id = SitePermutation::identity(first.len());
    group.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in generators {
                let c = h.compose(g);
                if group.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    group.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct Geometry {
    kind: GeometryKind,
    sites: usize,
    diagonals: Vec<(usize, usize)>,
    generators: Vec<SitePermutation>,
    group: Vec<SitePermutation>,
    bipartitions: Vec<Vec<usize>>,
}

fn perm(image: &[usize]) -> SitePermutation {
    SitePermutation::from_one_based(image).expect("built-in generator is a permutation")
}

fn subsets(lists: &[&[usize]]) -> Vec<Vec<usize>> {
    lists
        .iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|x| x - 1).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

impl Geometry {
    pub fn new(kind: GeometryKind) -> Result<Self> {
        let sites = kind.site_count();
        let half = sites / 2;
        let paired = |k: usize| (0..k / 2).map(|j| (j, j + k / 2)).collect::<Vec<_>>();
        let (generators, diagonals, bipartitions) = match kind {
            GeometryKind::Square => (
                vec![perm(&[2, 3, 4, 1]), perm(&[1, 4, 3, 2])],
                paired(4),
                subsets(&[&[1, 2], &[1, 4]]),
            ),
            GeometryKind::Hexagon | GeometryKind::Polygon(_) => {
                if sites < 4 || !sites.is_multiple_of(2) {
                    return Err(Error::InvalidPolygon(sites));
                }
                let rotation: Vec<usize> = (0..sites).map(|j| (j + 1) % sites).collect();
                let reflection: Vec<usize> = (0..sites).map(|j| (sites - j) % sites).collect();
                let runs = (0..half).map(|s| (s..s + half).collect()).collect();
                (
                    vec![
                        SitePermutation::new(rotation)?,
                        SitePermutation::new(reflection)?,
                    ],
                    paired(sites),
                    runs,
                )
            }
            GeometryKind::Cube => (
                vec![
                    perm(&[2, 3, 4, 1, 6, 7, 8, 5]),
                    perm(&[2, 8, 5, 3, 6, 4, 1, 7]),
                    perm(&[5, 6, 7, 8, 1, 2, 3, 4]),
                ],
                paired(8),
                subsets(&[&[1, 2, 3, 4], &[1, 2, 7, 8], &[2, 3, 5, 8]]),
            ),
            GeometryKind::Octahedron => (
                vec![
                    perm(&[2, 3, 4, 5, 6, 1]),
                    perm(&[4, 2, 3, 1, 5, 6]),
                    perm(&[1, 3, 2, 4, 6, 5]),
                ],
                paired(6),
                subsets(&[&[1, 2, 3], &[1, 2, 6], &[1, 3, 5], &[1, 5, 6]]),
            ),
            GeometryKind::Tetrahedron => (
                vec![perm(&[2, 1, 3, 4]), perm(&[2, 3, 4, 1])],
                Vec::new(),
                subsets(&[&[1, 2], &[1, 3], &[1, 4]]),
            ),
        };
        let group = symmetry_group_closure(&generators);
        Ok(Self {
            kind,
            sites,
            diagonals,
            generators,
            group,
            bipartitions,
        })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    /// Number of sites `K`.
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn half(&self) -> usize {
        self.sites / 2
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn has_diagonals(&self) -> bool {
        !self.diagonals.is_empty()
    }

    pub fn generators(&self) -> &[SitePermutation] {
        &self.generators
    }

    pub fn symmetry_group(&self) -> &[SitePermutation] {
        &self.group
    }

    /// One sorted representative subset per allowed bipartition.
    pub fn bipartitions(&self) -> &[Vec<usize>] {
        &self.bipartitions
    }

    pub fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.sites).filter(|s| !subset.contains(s)).collect()
    }

    /// Whether `subset` or its complement is an allowed bipartition.
    pub fn is_allowed_bipartition(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != self.half() {
            return false;
        }
        let c = self.complement(&s);
        self.bipartitions.iter().any(|b| *b == s || *b == c)
    }

    /// All distinct images of a site subset under the symmetry group.
    pub fn orbit_of_subset(&self, subset: &[usize]) -> Result<Vec<Vec<usize>>> {
        if subset.iter().any(|&s| s >= self.sites) {
            return Err(Error::InvalidSubset {
                subset: subset.to_vec(),
                sites: self.sites,
            });
        }
        let images: BTreeSet<Vec<usize>> = self
            .group
            .iter()
            .map(|g| {
                let mut img: Vec<usize> = subset.iter().map(|&s| g.apply(s)).collect();
                img.sort_unstable();
                img.dedup();
                img
            })
            .collect();
        Ok(images.into_iter().collect())
    }

    /// Pairs of sites in the same unordered-pair orbit class, used to label
    /// symmetric graphs. Returns the class index of the pair `(a, b)`.
    pub(crate) fn pair_class(&self, a: usize, b: usize) -> usize {
        let k = self.sites;
        match self.kind {
            GeometryKind::Square | GeometryKind::Hexagon | GeometryKind::Polygon(_) => {
                let d = (a + k - b) % k;
                d.min(k - d) - 1
            }
            GeometryKind::Cube => {
                let (x, y) = (cube_coords(a), cube_coords(b));
                (0..3).filter(|&i| x[i] != y[i]).count() - 1
            }
            GeometryKind::Octahedron => usize::from((a + 3) % 6 == b),
            GeometryKind::Tetrahedron => 0,
        }
    }

    /// Number of distinct pair classes (`pair_class` ranges over `0..n`).
    pub fn pair_class_count(&self) -> usize {
        match self.kind {
            GeometryKind::Square => 2,
            GeometryKind::Hexagon | GeometryKind::Cube => 3,
            GeometryKind::Polygon(k) => k / 2,
            GeometryKind::Octahedron => 2,
            GeometryKind::Tetrahedron => 1,
        }
    }
}

/// Unit-cube coordinates of each vertex in the cube labelling.
fn cube_coords(site: usize) -> [u8; 3] {
    const COORDS: [[u8; 3]; 8] = [
        [0, 0, 0],
        [1, 0, 0],
        [1, 0, 1],
        [0, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
        [0, 1, 0],
        [1, 1, 0],
    ];
    COORDS[site]
}

/// Formats 0-based site indices as a 1-based set, e.g. `{1,2,3}`.
pub fn format_sites(sites: &[usize]) -> String {
    let inner: Vec<String> = sites.iter().map(|s| (s + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(s: &[usize]) -> Vec<usize> {
        s.iter().map(|x| x - 1).collect()
    }

    fn all_kinds() -> Vec<GeometryKind> {
        vec![
            GeometryKind::Square,
            GeometryKind::Hexagon,
            GeometryKind::Polygon(8),
            GeometryKind::Polygon(10),
            GeometryKind::Cube,
            GeometryKind::Octahedron,
            GeometryKind::Tetrahedron,
        ]
    }

    #[test]
    fn group_orders() {
        let expect = [
            (GeometryKind::Square, 8),
            (GeometryKind::Hexagon, 12),
            (GeometryKind::Polygon(8), 16),
            (GeometryKind::Cube, 48),
            (GeometryKind::Octahedron, 48),
            (GeometryKind::Tetrahedron, 24),
        ];
        for (kind, order) in expect {
            let g = Geometry::new(kind).unwrap();
            assert_eq!(g.symmetry_group().len(), order, "{kind}");
        }
    }

    #[test]
    fn closure_of_square_generators() {
        let gens = vec![
            SitePermutation::from_one_based(&[2, 3, 4, 1]).unwrap(),
            SitePermutation::from_one_based(&[1, 4, 3, 2]).unwrap(),
        ];
        let group = symmetry_group_closure(&gens);
        assert_eq!(group.len(), 8);
        assert!(group.windows(2).all(|w| w[0] < w[1]));
        assert!(group[0].is_identity());
    }

    #[test]
    fn groups_are_closed_with_inverses() {
        for kind in all_kinds() {
            let g = Geometry::new(kind).unwrap();
            let set: BTreeSet<_> = g.symmetry_group().iter().cloned().collect();
            for a in g.symmetry_group() {
                assert!(set.contains(&a.inverse()));
                for b in g.symmetry_group() {
                    assert!(set.contains(&a.compose(b)), "{kind}");
                }
            }
        }
    }

    #[test]
    fn bipartitions_hit_each_diagonal_once_and_are_group_invariant() {
        for kind in all_kinds() {
            let g = Geometry::new(kind).unwrap();
            for b in g.bipartitions() {
                assert_eq!(b.len(), g.half());
                for &(x, y) in g.diagonals() {
                    assert!(b.contains(&x) ^ b.contains(&y), "{kind} {b:?}");
                }
                for p in g.symmetry_group() {
                    let img: Vec<usize> = b.iter().map(|&s| p.apply(s)).collect();
                    assert!(g.is_allowed_bipartition(&img), "{kind} {b:?} -> {img:?}");
                }
            }
            // diagonals partition the sites
            let mut covered: Vec<usize> = g.diagonals().iter().flat_map(|&(a, b)| [a, b]).collect();
            covered.sort_unstable();
            if g.has_diagonals() {
                assert_eq!(covered, (0..g.sites()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn listed_bipartitions() {
        let sq = Geometry::new(GeometryKind::Square).unwrap();
        assert_eq!(sq.bipartitions(), &[one(&[1, 2]), one(&[1, 4])]);
        let oct = Geometry::new(GeometryKind::Octahedron).unwrap();
        assert_eq!(
            oct.bipartitions(),
            &[
                one(&[1, 2, 3]),
                one(&[1, 2, 6]),
                one(&[1, 3, 5]),
                one(&[1, 5, 6])
            ]
        );
        let cube = Geometry::new(GeometryKind::Cube).unwrap();
        assert_eq!(cube.bipartitions().len(), 3);
        let hex = Geometry::new(GeometryKind::Hexagon).unwrap();
        assert_eq!(
            hex.bipartitions(),
            &[one(&[1, 2, 3]), one(&[2, 3, 4]), one(&[3, 4, 5])]
        );
    }

    #[test]
    fn hexagon_bipartitions_are_a_strict_subset_of_octahedral_ones() {
        let hex = Geometry::new(GeometryKind::Hexagon).unwrap();
        let oct = Geometry::new(GeometryKind::Octahedron).unwrap();
        for b in hex.bipartitions() {
            assert!(oct.is_allowed_bipartition(b));
        }
        let extra = oct
            .bipartitions()
            .iter()
            .filter(|b| !hex.is_allowed_bipartition(b))
            .count();
        assert_eq!(extra, 1);
        // D6 is a subgroup of the octahedral group on the same labels
        let oset: BTreeSet<_> = oct.symmetry_group().iter().cloned().collect();
        assert!(hex.symmetry_group().iter().all(|g| oset.contains(g)));
    }

    #[test]
    fn subset_orbits() {
        let sq = Geometry::new(GeometryKind::Square).unwrap();
        let orbit = sq.orbit_of_subset(&one(&[1, 2])).unwrap();
        assert_eq!(
            orbit,
            vec![one(&[1, 2]), one(&[1, 4]), one(&[2, 3]), one(&[3, 4])]
        );
        let hex = Geometry::new(GeometryKind::Hexagon).unwrap();
        assert_eq!(hex.orbit_of_subset(&one(&[1, 2, 3])).unwrap().len(), 6);
        let cube = Geometry::new(GeometryKind::Cube).unwrap();
        let faces = cube.orbit_of_subset(&one(&[1, 2, 3, 4])).unwrap();
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert!(cube.is_allowed_bipartition(f));
        }
        assert!(sq.orbit_of_subset(&[7]).is_err());
    }

    #[test]
    fn parses_names() {
        assert_eq!("cube".parse::<GeometryKind>().unwrap(), GeometryKind::Cube);
        assert_eq!(
            "polygon:8".parse::<GeometryKind>().unwrap(),
            GeometryKind::Polygon(8)
        );
        assert!(matches!(
            "polygon:7".parse::<GeometryKind>(),
            Err(Error::InvalidPolygon(7))
        ));
        assert!(matches!(
            "dodecahedron".parse::<GeometryKind>(),
            Err(Error::UnknownGeometry(_))
        ));
        for kind in all_kinds() {
            assert_eq!(kind.to_string().parse::<GeometryKind>().unwrap(), kind);
        }
    }

    #[test]
    fn pair_classes_are_group_invariant() {
        for kind in all_kinds() {
            let g = Geometry::new(kind).unwrap();
            for a in 0..g.sites() {
                for b in 0..g.sites() {
                    if a == b {
                        continue;
                    }
                    let c = g.pair_class(a, b);
                    assert!(c < g.pair_class_count());
                    assert_eq!(c, g.pair_class(b, a));
                    for p in g.symmetry_group() {
                        assert_eq!(c, g.pair_class(p.apply(a), p.apply(b)), "{kind}");
                    }
                }
            }
        }
    }
}
