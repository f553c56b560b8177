//! Binary masks, exterior boundaries, connected components and size pruning.
//!
//! The boundary of a region is its *exterior* boundary: the pixels outside the
//! region that touch it through the 3x3 neighborhood. This is dilation by a
//! 3x3 block followed by masking out the region itself.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::image::check_dimensions;

/// Neighbor offsets in raster order, 8-connected.
pub(crate) const NEIGHBORS_8: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

pub(crate) const NEIGHBORS_4: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    pub(crate) fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &NEIGHBORS_4,
            Connectivity::Eight => &NEIGHBORS_8,
        }
    }
}

/// Calls `f` with the linear index of every in-bounds neighbor of `(x, y)`.
#[inline]
pub(crate) fn for_each_neighbor(
    width: usize,
    height: usize,
    x: usize,
    y: usize,
    offsets: &[(isize, isize)],
    mut f: impl FnMut(usize),
) {
    for &(dx, dy) in offsets {
        let nx = x as isize + dx;
        let ny = y as isize + dy;
        if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
            f(ny as usize * width + nx as usize);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        check_dimensions(width, height)?;
        if bits.len() != width * height {
            return Err(Error::SampleCount {
                width,
                height,
                expected: width * height,
                actual: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn empty(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        check_dimensions(width, height)?;
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub(crate) fn from_parts(width: usize, height: usize, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), width * height);
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_all_false(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn not(&self) -> Self {
        Self::from_parts(self.width, self.height, self.bits.iter().map(|b| !b).collect())
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a && b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a || b)
    }

    /// True when every set pixel of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dimensions() == other.dimensions()
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::DimensionMismatch {
                expected: self.dimensions(),
                actual: other.dimensions(),
            });
        }
        Ok(Self::from_parts(
            self.width,
            self.height,
            self.bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        ))
    }
}

/// Connected-component labels. `0` is background; components are numbered
/// `1..=count` in the raster order of their first pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    count: u32,
}

impl LabelMap {
    pub(crate) fn from_parts(width: usize, height: usize, labels: Vec<u32>, count: u32) -> Self {
        debug_assert_eq!(labels.len(), width * height);
        Self {
            width,
            height,
            labels,
            count,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    /// Pixel count per label; index 0 holds the background area.
    pub fn areas(&self) -> Vec<usize> {
        let mut areas = vec![0usize; self.count as usize + 1];
        for &l in &self.labels {
            areas[l as usize] += 1;
        }
        areas
    }

    /// Mask of the pixels carrying `label`.
    pub fn component(&self, label: u32) -> BinaryMask {
        BinaryMask::from_parts(
            self.width,
            self.height,
            self.labels.iter().map(|&l| l == label).collect(),
        )
    }

    /// Per-label flag: does the component touch the outermost pixel ring?
    pub fn touches_frame(&self) -> Vec<bool> {
        let mut touches = vec![false; self.count as usize + 1];
        let (w, h) = (self.width, self.height);
        for y in 0..h {
            for x in 0..w {
                if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                    touches[self.labels[y * w + x] as usize] = true;
                }
            }
        }
        touches
    }
}

/// Dilation by a 3x3 block, clipped at the image frame.
pub fn dilate3(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dimensions();
    let bits = &mask.bits;

    // Separable: horizontal max then vertical max.
    let mut horiz = vec![false; w * h];
    for y in 0..h {
        let row = &bits[y * w..(y + 1) * w];
        let out = &mut horiz[y * w..(y + 1) * w];
        for x in 0..w {
            let lo = x.saturating_sub(1);
            let hi = (x + 1).min(w - 1);
            out[x] = row[lo..=hi].iter().any(|&b| b);
        }
    }
    let mut out = vec![false; w * h];
    for y in 0..h {
        let lo = y.saturating_sub(1);
        let hi = (y + 1).min(h - 1);
        for yy in lo..=hi {
            let src = &horiz[yy * w..(yy + 1) * w];
            let dst = &mut out[y * w..(y + 1) * w];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d |= s;
            }
        }
    }
    BinaryMask::from_parts(w, h, out)
}

/// Pixels outside `mask` that are 8-adjacent to it: `dilate3(mask) & !mask`.
pub fn exterior_boundary(mask: &BinaryMask) -> BinaryMask {
    let dilated = dilate3(mask);
    let bits = dilated
        .bits
        .iter()
        .zip(&mask.bits)
        .map(|(&d, &m)| d && !m)
        .collect();
    BinaryMask::from_parts(mask.width, mask.height, bits)
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new() -> Self {
        // Slot 0 is unused so provisional labels can start at 1.
        Self { parent: vec![0] }
    }

    fn make(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn root(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let grand = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = grand;
            a = grand;
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Two-pass union-find labeling. Final labels follow the raster order in
/// which each component is first touched.
pub fn label_components(mask: &BinaryMask, connectivity: Connectivity) -> LabelMap {
    let (w, h) = mask.dimensions();
    let mut labels = vec![0u32; w * h];
    let mut sets = DisjointSet::new();

    // Already-visited neighbors in a raster scan.
    let back: &[(isize, isize)] = match connectivity {
        Connectivity::Four => &[(0, -1), (-1, 0)],
        Connectivity::Eight => &[(-1, -1), (0, -1), (1, -1), (-1, 0)],
    };

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if !mask.bits[i] {
                continue;
            }
            let mut current = 0u32;
            for_each_neighbor(w, h, x, y, back, |n| {
                let l = labels[n];
                if l != 0 {
                    if current == 0 {
                        current = l;
                    } else if l != current {
                        sets.union(current, l);
                    }
                }
            });
            labels[i] = if current == 0 { sets.make() } else { current };
        }
    }

    let mut remap = vec![0u32; sets.parent.len()];
    let mut count = 0u32;
    for l in labels.iter_mut() {
        if *l == 0 {
            continue;
        }
        let root = sets.root(*l) as usize;
        if remap[root] == 0 {
            count += 1;
            remap[root] = count;
        }
        *l = remap[root];
    }
    LabelMap::from_parts(w, h, labels, count)
}

/// Keeps the pixels whose component has at least `min_area` pixels.
pub fn prune_small(labels: &LabelMap, min_area: usize) -> BinaryMask {
    let areas = labels.areas();
    let bits = labels
        .labels
        .iter()
        .map(|&l| l != 0 && areas[l as usize] >= min_area)
        .collect();
    BinaryMask::from_parts(labels.width, labels.height, bits)
}

/// Pixels reachable from the image frame without entering `blocked`.
///
/// Seeds are the unblocked pixels of the outermost ring.
pub fn reachable_from_frame(blocked: &BinaryMask, connectivity: Connectivity) -> BinaryMask {
    let (w, h) = blocked.dimensions();
    let mut seen = vec![false; w * h];
    let mut queue = VecDeque::new();
    for y in 0..h {
        for x in 0..w {
            let on_frame = x == 0 || y == 0 || x == w - 1 || y == h - 1;
            let i = y * w + x;
            if on_frame && !blocked.bits[i] {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    let offsets = connectivity.offsets();
    while let Some(i) = queue.pop_front() {
        let (x, y) = (i % w, i / w);
        for_each_neighbor(w, h, x, y, offsets, |n| {
            if !seen[n] && !blocked.bits[n] {
                seen[n] = true;
                queue.push_back(n);
            }
        });
    }
    BinaryMask::from_parts(w, h, seen)
}

/// Labels of frame-disjoint components of `mask` that the exterior boundary
/// fails to separate from the frame. Empty when every contour is closed.
pub fn unenclosed_components(mask: &BinaryMask) -> Vec<u32> {
    let labels = label_components(mask, Connectivity::Eight);
    let boundary = exterior_boundary(mask);
    let outside = reachable_from_frame(&boundary, Connectivity::Eight);
    let touches = labels.touches_frame();

    let mut leaked = vec![false; labels.count as usize + 1];
    for (i, &l) in labels.labels.iter().enumerate() {
        if l != 0 && !touches[l as usize] && outside.bits[i] {
            leaked[l as usize] = true;
        }
    }
    (1..=labels.count).filter(|&l| leaked[l as usize]).collect()
}
