//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here is deliberately naive: straight loops, no separability, no
//! priority queues, no union-find. The library is checked against these.

#![allow(dead_code)]

use curvseg::{BinaryMask, Image};
use rand::Rng;

pub fn in_bounds(w: usize, h: usize, x: isize, y: isize) -> bool {
    x >= 0 && y >= 0 && (x as usize) < w && (y as usize) < h
}

/// 8-neighbors in raster order.
pub fn neighbors8(w: usize, h: usize, i: usize) -> Vec<usize> {
    let (x, y) = ((i % w) as isize, (i / w) as isize);
    let mut out = Vec::with_capacity(8);
    for dy in -1..=1 {
        for dx in -1..=1 {
            if (dx, dy) == (0, 0) {
                continue;
            }
            if in_bounds(w, h, x + dx, y + dy) {
                out.push(((y + dy) as usize) * w + (x + dx) as usize);
            }
        }
    }
    out
}

pub fn neighbors4(w: usize, h: usize, i: usize) -> Vec<usize> {
    let (x, y) = ((i % w) as isize, (i / w) as isize);
    [(0, -1), (-1, 0), (1, 0), (0, 1)]
        .into_iter()
        .filter(|&(dx, dy)| in_bounds(w, h, x + dx, y + dy))
        .map(|(dx, dy)| ((y + dy) as usize) * w + (x + dx) as usize)
        .collect()
}

/// Direct 2-D convolution with the full (2r+1)^2 Gaussian, replicate border.
pub fn gaussian_2d(image: &Image, sigma: f64) -> Image {
    let r = (2.0 * sigma).ceil() as isize;
    let g: Vec<f64> = (-r..=r)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = g.iter().sum();
    let g: Vec<f64> = g.iter().map(|v| v / total).collect();
    let (w, h) = image.dimensions();
    let clamp = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;
    Image::from_fn(w, h, |x, y| {
        let mut acc = 0.0;
        for dy in -r..=r {
            for dx in -r..=r {
                let sx = clamp(x as isize + dx, w);
                let sy = clamp(y as isize + dy, h);
                acc += g[(dy + r) as usize] * g[(dx + r) as usize] * image.get(sx, sy);
            }
        }
        acc
    })
    .unwrap()
}

/// Naive 3x3 dilation: a pixel is set if any in-frame pixel of its 3x3 block is.
pub fn dilate_naive(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dimensions();
    BinaryMask::from_fn(w, h, |x, y| {
        (-1..=1).any(|dy| {
            (-1..=1).any(|dx| {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                in_bounds(w, h, nx, ny) && mask.get(nx as usize, ny as usize)
            })
        })
    })
    .unwrap()
}

/// Flood-fill labeling; labels follow the raster order of each component's
/// first pixel.
pub fn label_naive(mask: &BinaryMask, eight: bool) -> (Vec<u32>, u32) {
    let (w, h) = mask.dimensions();
    let bits = mask.bits();
    let mut labels = vec![0u32; w * h];
    let mut count = 0;
    for start in 0..w * h {
        if !bits[start] || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let nbs = if eight { neighbors8(w, h, i) } else { neighbors4(w, h, i) };
            for n in nbs {
                if bits[n] && labels[n] == 0 {
                    labels[n] = count;
                    stack.push(n);
                }
            }
        }
    }
    (labels, count)
}

/// Pixels reachable from the outermost ring by 8-steps that avoid `blocked`.
pub fn outside_of(blocked: &BinaryMask) -> Vec<bool> {
    let (w, h) = blocked.dimensions();
    let bits = blocked.bits();
    let mut seen = vec![false; w * h];
    let mut stack: Vec<usize> = (0..w * h)
        .filter(|&i| {
            let (x, y) = (i % w, i / w);
            (x == 0 || y == 0 || x + 1 == w || y + 1 == h) && !bits[i]
        })
        .collect();
    for &i in &stack {
        seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        for n in neighbors8(w, h, i) {
            if !seen[n] && !bits[n] {
                seen[n] = true;
                stack.push(n);
            }
        }
    }
    seen
}

/// A 0/1 mask made of a few random discs plus scattered single pixels.
pub fn random_blob_mask(rng: &mut impl Rng, w: usize, h: usize) -> BinaryMask {
    let discs: Vec<(f64, f64, f64)> = (0..rng.random_range(1..=8))
        .map(|_| {
            (
                rng.random_range(0.0..w as f64),
                rng.random_range(0.0..h as f64),
                rng.random_range(1.5..12.0),
            )
        })
        .collect();
    let mut mask = BinaryMask::from_fn(w, h, |x, y| {
        discs.iter().any(|&(cx, cy, r)| {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            dx * dx + dy * dy <= r * r
        })
    })
    .unwrap();
    for _ in 0..rng.random_range(0..20) {
        let (x, y) = (rng.random_range(0..w), rng.random_range(0..h));
        mask.set(x, y, true);
    }
    mask
}

/// Reference flooding by ordered immersion.
///
/// Regional minima are found by exploring each plateau in full; the frontier
/// is a plain list scanned linearly for its smallest `(level, arrival)` entry.
/// A pixel popped with two or more distinct labeled neighbors becomes a
/// watershed pixel and does not spread; otherwise it takes its neighbors'
/// label and enqueues its unvisited neighbors at `max(own level, popped
/// level)`. Pixels never reached end up as watershed pixels.
pub fn immersion_oracle(w: usize, h: usize, levels: &[u16]) -> (Vec<u32>, Vec<bool>) {
    let n = w * h;
    let mut labels = vec![0u32; n];
    let mut count = 0u32;
    let mut plateau_done = vec![false; n];
    for start in 0..n {
        if plateau_done[start] {
            continue;
        }
        let mut plateau = vec![start];
        plateau_done[start] = true;
        let mut k = 0;
        while k < plateau.len() {
            for nb in neighbors8(w, h, plateau[k]) {
                if levels[nb] == levels[start] && !plateau_done[nb] {
                    plateau_done[nb] = true;
                    plateau.push(nb);
                }
            }
            k += 1;
        }
        let is_min = plateau
            .iter()
            .all(|&p| neighbors8(w, h, p).iter().all(|&nb| levels[nb] >= levels[p]));
        if is_min {
            count += 1;
            for &p in &plateau {
                labels[p] = count;
            }
        }
    }

    let mut frontier: Vec<(u16, usize, usize)> = Vec::new();
    let mut enqueued = vec![false; n];
    let mut arrival = 0;
    for i in 0..n {
        if labels[i] != 0 {
            enqueued[i] = true;
            frontier.push((levels[i], arrival, i));
            arrival += 1;
        }
    }
    let mut watershed = vec![false; n];
    while !frontier.is_empty() {
        let best = (0..frontier.len())
            .min_by_key(|&k| (frontier[k].0, frontier[k].1))
            .unwrap();
        let (level, _, i) = frontier.remove(best);
        if labels[i] == 0 {
            let mut seen: Vec<u32> = neighbors8(w, h, i)
                .into_iter()
                .map(|nb| labels[nb])
                .filter(|&l| l != 0)
                .collect();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() >= 2 {
                watershed[i] = true;
                continue;
            }
            labels[i] = seen[0];
        }
        for nb in neighbors8(w, h, i) {
            if !enqueued[nb] && labels[nb] == 0 {
                enqueued[nb] = true;
                frontier.push((levels[nb].max(level), arrival, nb));
                arrival += 1;
            }
        }
    }
    for i in 0..n {
        if labels[i] == 0 {
            watershed[i] = true;
        }
    }
    (labels, watershed)
}
