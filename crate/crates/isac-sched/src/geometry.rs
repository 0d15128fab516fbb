//! Cell layout, virtual scatterers, and user drops.
//!
//! The scheduler never sees real targets: each (cell, beam) pair is assigned
//! a virtual scatterer at the cell edge in the beam's look direction, and
//! interference is evaluated against that proxy scene.

use std::f64::consts::PI;

use rand::Rng;
use thiserror::Error;

use crate::codebook::{BeamId, Codebook, SILENT_BEAM};
use crate::comm;
use crate::units::wrap_angle;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("point coincides with BS {bs}; polar coordinates undefined")]
    ZeroRange { bs: usize },
    #[error("UE minimum range {min} must lie inside the cell radius {radius}")]
    BadAnnulus { min: f64, radius: f64 },
}

/// 2D Cartesian position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Range and azimuth of a point relative to some base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub range_m: f64,
    /// Wrapped to [-pi, pi).
    pub azimuth_rad: f64,
}

impl PolarPoint {
    /// Back to Cartesian, relative to the same origin.
    pub fn to_cartesian(&self) -> Point {
        Point::new(
            self.range_m * self.azimuth_rad.cos(),
            self.range_m * self.azimuth_rad.sin(),
        )
    }
}

/// Base station positions plus cached pairwise distances and azimuths.
#[derive(Debug, Clone)]
pub struct CellLayout {
    radius_m: f64,
    bs_positions: Vec<Point>,
    separations: Vec<f64>,
    azimuths: Vec<f64>,
}

impl CellLayout {
    pub fn n_cells(&self) -> usize {
        self.bs_positions.len()
    }

    pub fn radius_m(&self) -> f64 {
        self.radius_m
    }

    pub fn bs_position(&self, bs: usize) -> Point {
        self.bs_positions[bs]
    }

    /// Distance between BS `i` and BS `j` (i != j).
    pub fn bs_separation(&self, i: usize, j: usize) -> f64 {
        assert_ne!(i, j, "separation undefined for a BS and itself");
        self.separations[i * self.n_cells() + j]
    }

    /// Azimuth of BS `j` as seen from BS `i`, wrapped to [-pi, pi).
    pub fn bs_azimuth(&self, i: usize, j: usize) -> f64 {
        assert_ne!(i, j, "azimuth undefined for a BS and itself");
        self.azimuths[i * self.n_cells() + j]
    }
}

/// Two cells of radius `radius_m` with base stations on the x-axis at
/// (0, 0) and (separation_m, 0).
pub fn build_layout(radius_m: f64, separation_m: f64) -> Result<CellLayout, GeometryError> {
    if radius_m <= 0.0 {
        return Err(GeometryError::NonPositive {
            name: "radius_m",
            value: radius_m,
        });
    }
    if separation_m <= 0.0 {
        return Err(GeometryError::NonPositive {
            name: "separation_m",
            value: separation_m,
        });
    }
    let bs_positions = vec![Point::new(0.0, 0.0), Point::new(separation_m, 0.0)];
    let n = bs_positions.len();
    let mut separations = vec![0.0; n * n];
    let mut azimuths = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (bs_positions[i], bs_positions[j]);
            separations[i * n + j] = a.distance(&b);
            azimuths[i * n + j] = wrap_angle((b.y - a.y).atan2(b.x - a.x));
        }
    }
    Ok(CellLayout {
        radius_m,
        bs_positions,
        separations,
        azimuths,
    })
}

/// Euclidean range and wrapped azimuth of `point` as seen from BS `bs`.
pub fn relative_polar(
    layout: &CellLayout,
    bs: usize,
    point: Point,
) -> Result<PolarPoint, GeometryError> {
    let origin = layout.bs_position(bs);
    let range = origin.distance(&point);
    if range == 0.0 {
        return Err(GeometryError::ZeroRange { bs });
    }
    Ok(PolarPoint {
        range_m: range,
        azimuth_rad: wrap_angle((point.y - origin.y).atan2(point.x - origin.x)),
    })
}

/// Radar cross sections used when filling a scene, in square meters.
#[derive(Debug, Clone, Copy)]
pub struct RcsConfig {
    /// sigma when the same BS transmits and receives.
    pub monostatic_m2: f64,
    /// sigma when different BSs transmit and receive.
    pub bistatic_m2: f64,
}

impl Default for RcsConfig {
    fn default() -> Self {
        Self {
            monostatic_m2: 1.0,
            bistatic_m2: 1.0,
        }
    }
}

/// Where a beam's virtual scatterer sits relative to the look direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScattererPlacement {
    /// On the beam axis (default).
    Boresight,
    /// Offset by half the half-power beamwidth.
    HalfPowerEdge,
}

/// One virtual scatterer: cell-edge reference target for a (cell, beam) pair.
#[derive(Debug, Clone)]
pub struct Scatterer {
    pub cell: usize,
    pub beam: BeamId,
    /// Polar coordinates w.r.t. every BS, indexed by BS.
    pub polar: Vec<PolarPoint>,
    rcs: Vec<f64>,
}

impl Scatterer {
    /// RCS seen by receive BS `rx` for a pulse transmitted by BS `tx`.
    pub fn rcs(&self, rx: usize, tx: usize) -> f64 {
        self.rcs[rx * self.polar.len() + tx]
    }
}

/// All virtual scatterers of the cluster, one per (cell, real beam).
#[derive(Debug, Clone)]
pub struct Scene {
    scatterers: Vec<Scatterer>,
    n_cells: usize,
    beams_per_cell: usize,
}

impl Scene {
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn beams_per_cell(&self) -> usize {
        self.beams_per_cell
    }

    pub fn scatterers(&self) -> &[Scatterer] {
        &self.scatterers
    }

    /// Index of the scatterer mapped from a (cell, beam) pair.
    pub fn mapped_index(&self, cell: usize, beam: BeamId) -> usize {
        assert!(beam != SILENT_BEAM && beam <= self.beams_per_cell);
        cell * self.beams_per_cell + beam - 1
    }

    /// The scatterer a beam probes: the map f_i of the cell's codebook.
    pub fn mapped(&self, cell: usize, beam: BeamId) -> &Scatterer {
        &self.scatterers[self.mapped_index(cell, beam)]
    }
}

/// Places one scatterer per (cell, beam) at the cell edge in the beam's
/// direction and precomputes polar coordinates w.r.t. every BS.
pub fn place_virtual_scatterers(
    layout: &CellLayout,
    codebooks: &[Codebook],
    rcs: &RcsConfig,
    placement: ScattererPlacement,
) -> Scene {
    assert_eq!(codebooks.len(), layout.n_cells());
    let n = layout.n_cells();
    let beams_per_cell = codebooks[0].n_beams();
    let mut scatterers = Vec::with_capacity(n * beams_per_cell);
    let rcs_matrix: Vec<f64> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                rcs.monostatic_m2
            } else {
                rcs.bistatic_m2
            }
        })
        .collect();
    for (cell, cb) in codebooks.iter().enumerate() {
        assert_eq!(cb.n_beams(), beams_per_cell, "codebook sizes must match");
        let offset = match placement {
            ScattererPlacement::Boresight => 0.0,
            ScattererPlacement::HalfPowerEdge => cb.half_power_beamwidth() / 2.0,
        };
        let origin = layout.bs_position(cell);
        for beam in cb.beam_ids() {
            let azimuth = wrap_angle(cb.look_dir(beam) + offset);
            let pos = Point::new(
                origin.x + layout.radius_m() * azimuth.cos(),
                origin.y + layout.radius_m() * azimuth.sin(),
            );
            let polar = (0..n)
                .map(|bs| relative_polar(layout, bs, pos).expect("scatterer on a BS"))
                .collect();
            scatterers.push(Scatterer {
                cell,
                beam,
                polar,
                rcs: rcs_matrix.clone(),
            });
        }
    }
    Scene {
        scatterers,
        n_cells: n,
        beams_per_cell,
    }
}

/// A realization of user positions with large-scale fading toward every BS.
#[derive(Debug, Clone)]
pub struct UeDrop {
    positions: Vec<Vec<Point>>,
    /// beta[bs][cell][ue], linear scale.
    beta: Vec<Vec<Vec<f64>>>,
}

impl UeDrop {
    /// Builds a drop from explicit positions, computing the fading matrix.
    pub fn from_positions(
        layout: &CellLayout,
        positions: Vec<Vec<Point>>,
    ) -> Result<Self, GeometryError> {
        let n = layout.n_cells();
        assert_eq!(positions.len(), n);
        let mut beta = vec![Vec::with_capacity(n); n];
        for (bs, rows) in beta.iter_mut().enumerate() {
            for ues in &positions {
                let row = ues
                    .iter()
                    .map(|&p| {
                        relative_polar(layout, bs, p)
                            .map(|polar| comm::large_scale_fading(polar.range_m))
                    })
                    .collect::<Result<Vec<f64>, _>>()?;
                rows.push(row);
            }
        }
        Ok(Self { positions, beta })
    }

    pub fn n_cells(&self) -> usize {
        self.positions.len()
    }

    pub fn ues_in_cell(&self, cell: usize) -> usize {
        self.positions[cell].len()
    }

    pub fn position(&self, cell: usize, ue: usize) -> Point {
        self.positions[cell][ue]
    }

    /// Large-scale fading of UE `ue` of cell `cell` toward BS `bs`.
    pub fn beta(&self, bs: usize, cell: usize, ue: usize) -> f64 {
        self.beta[bs][cell][ue]
    }
}

/// Drops `ues_per_cell` users uniformly over the annulus
/// [min_range_m, radius] around their serving BS.
pub fn drop_ues<R: Rng + ?Sized>(
    layout: &CellLayout,
    ues_per_cell: usize,
    min_range_m: f64,
    rng: &mut R,
) -> Result<UeDrop, GeometryError> {
    if min_range_m <= 0.0 || min_range_m >= layout.radius_m() {
        return Err(GeometryError::BadAnnulus {
            min: min_range_m,
            radius: layout.radius_m(),
        });
    }
    let r2_min = min_range_m * min_range_m;
    let r2_max = layout.radius_m() * layout.radius_m();
    let positions = (0..layout.n_cells())
        .map(|cell| {
            let origin = layout.bs_position(cell);
            (0..ues_per_cell)
                .map(|_| {
                    let r = (rng.gen::<f64>() * (r2_max - r2_min) + r2_min).sqrt();
                    let theta = rng.gen_range(-PI..PI);
                    Point::new(origin.x + r * theta.cos(), origin.y + r * theta.sin())
                })
                .collect()
        })
        .collect();
    UeDrop::from_positions(layout, positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn angle_eq(a: f64, b: f64, eps: f64) -> bool {
        wrap_angle(a - b).abs() < eps
    }

    #[test]
    fn layout_places_bss_on_axis() {
        let layout = build_layout(100.0, 200.0).unwrap();
        assert_eq!(layout.bs_position(0), Point::new(0.0, 0.0));
        assert_eq!(layout.bs_position(1), Point::new(200.0, 0.0));
        assert_relative_eq!(layout.bs_separation(0, 1), 200.0);
        assert_relative_eq!(layout.bs_separation(1, 0), 200.0);
        assert_relative_eq!(layout.bs_azimuth(0, 1), 0.0);
        // pi wraps to -pi in the half-open convention; same direction
        assert!(angle_eq(layout.bs_azimuth(1, 0), PI, 1e-12));

        let narrow = build_layout(100.0, 150.0).unwrap();
        assert_relative_eq!(narrow.bs_separation(0, 1), 150.0);
    }

    #[test]
    fn layout_rejects_nonpositive() {
        assert!(build_layout(0.0, 200.0).is_err());
        assert!(build_layout(100.0, -1.0).is_err());
    }

    #[test]
    fn polar_examples() {
        let layout = build_layout(100.0, 200.0).unwrap();
        let p = relative_polar(&layout, 0, Point::new(100.0, 0.0)).unwrap();
        assert_relative_eq!(p.range_m, 100.0);
        assert_relative_eq!(p.azimuth_rad, 0.0);

        let q = relative_polar(&layout, 0, Point::new(0.0, 100.0)).unwrap();
        assert_relative_eq!(q.range_m, 100.0);
        assert_relative_eq!(q.azimuth_rad, PI / 2.0);

        let r = relative_polar(&layout, 1, Point::new(100.0, 0.0)).unwrap();
        assert_relative_eq!(r.range_m, 100.0);
        assert!(angle_eq(r.azimuth_rad, PI, 1e-12));

        assert!(relative_polar(&layout, 0, Point::new(0.0, 0.0)).is_err());
    }

    fn default_scene(n_beams: usize) -> (CellLayout, Scene) {
        let layout = build_layout(100.0, 200.0).unwrap();
        let cb = Codebook::hamming(29, n_beams).unwrap();
        let scene = place_virtual_scatterers(
            &layout,
            &[cb.clone(), cb],
            &RcsConfig::default(),
            ScattererPlacement::Boresight,
        );
        (layout, scene)
    }

    #[test]
    fn scene_counts_and_partition() {
        let (_, scene) = default_scene(12);
        assert_eq!(scene.scatterers().len(), 24);
        for cell in 0..2 {
            let owned: Vec<_> = scene
                .scatterers()
                .iter()
                .filter(|s| s.cell == cell)
                .map(|s| s.beam)
                .collect();
            assert_eq!(owned.len(), 12);
            // f_i is a bijection between real beam ids and scatterers
            let mut sorted = owned.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=12).collect::<Vec<_>>());
        }
    }

    #[test]
    fn scatterers_sit_at_cell_edge() {
        let (_, scene) = default_scene(12);
        for s in scene.scatterers() {
            assert_relative_eq!(s.polar[s.cell].range_m, 100.0, epsilon = 1e-9);
        }
        // cell-0 beam toward BS 1 lands halfway between the BSs
        let toward = scene.mapped(0, 7); // look dir 0 for n_beams = 12
        assert_relative_eq!(toward.polar[1].range_m, 100.0, epsilon = 1e-9);
    }

    #[test]
    fn scene_mirror_symmetry() {
        let (_, scene) = default_scene(12);
        // Reflecting through the midpoint maps cell 0 onto cell 1: for each
        // cell-0 scatterer there is a cell-1 partner with swapped-BS polar
        // coordinates and mirrored azimuths.
        for s in scene.scatterers().iter().filter(|s| s.cell == 0) {
            let found = scene.scatterers().iter().any(|t| {
                t.cell == 1
                    && (t.polar[1].range_m - s.polar[0].range_m).abs() < 1e-9
                    && (t.polar[0].range_m - s.polar[1].range_m).abs() < 1e-9
                    && angle_eq(t.polar[1].azimuth_rad, PI - s.polar[0].azimuth_rad, 1e-9)
            });
            assert!(found, "no mirror for cell-0 beam {}", s.beam);
        }
    }

    #[test]
    fn half_power_edge_placement_shifts_azimuth() {
        let layout = build_layout(100.0, 200.0).unwrap();
        let cb = Codebook::hamming(29, 12).unwrap();
        let edge = place_virtual_scatterers(
            &layout,
            &[cb.clone(), cb.clone()],
            &RcsConfig::default(),
            ScattererPlacement::HalfPowerEdge,
        );
        let s = edge.mapped(0, 7);
        assert!(angle_eq(
            s.polar[0].azimuth_rad,
            cb.look_dir(7) + cb.half_power_beamwidth() / 2.0,
            1e-9
        ));
        assert_relative_eq!(s.polar[0].range_m, 100.0, epsilon = 1e-9);
    }

    #[test]
    fn drops_are_deterministic_and_in_annulus() {
        let layout = build_layout(100.0, 200.0).unwrap();
        let mut rng_a = ChaCha8Rng::seed_from_u64(42);
        let mut rng_b = ChaCha8Rng::seed_from_u64(42);
        let a = drop_ues(&layout, 10, 1.0, &mut rng_a).unwrap();
        let b = drop_ues(&layout, 10, 1.0, &mut rng_b).unwrap();
        assert_eq!(a.ues_in_cell(0) + a.ues_in_cell(1), 20);
        for cell in 0..2 {
            for ue in 0..10 {
                assert_eq!(a.position(cell, ue), b.position(cell, ue));
                let range = layout.bs_position(cell).distance(&a.position(cell, ue));
                assert!((1.0..=100.0).contains(&range));
                for bs in 0..2 {
                    assert_eq!(a.beta(bs, cell, ue), b.beta(bs, cell, ue));
                    assert!(a.beta(bs, cell, ue) > 0.0 && a.beta(bs, cell, ue) <= 1.0);
                }
            }
        }
    }

    #[test]
    fn drop_rejects_bad_annulus() {
        let layout = build_layout(100.0, 200.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(drop_ues(&layout, 4, 0.0, &mut rng).is_err());
        assert!(drop_ues(&layout, 4, 100.0, &mut rng).is_err());
    }

    proptest! {
        #[test]
        fn polar_round_trip(x in -500.0..500.0f64, y in -500.0..500.0f64) {
            prop_assume!(x.hypot(y) > 1e-6);
            let layout = build_layout(100.0, 200.0).unwrap();
            let polar = relative_polar(&layout, 0, Point::new(x, y)).unwrap();
            let back = polar.to_cartesian();
            let scale = x.hypot(y);
            prop_assert!((back.x - x).abs() <= 1e-9 * scale);
            prop_assert!((back.y - y).abs() <= 1e-9 * scale);
        }
    }
}
