// SPDX-License-Identifier: Apache-2.0

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{domain, Error, Result, Spectrum};

/// A function `f: [n] -> [n]` with `f(i) != i`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mapping {
    image: Vec<u32>,
}

impl Mapping {
    /// From 0-based images. Rejects fixed points and out-of-range values.
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        if n < 2 {
            return domain(format!(
                "a mapping without fixed points needs n >= 2, got {n}"
            ));
        }
        for (i, &v) in image.iter().enumerate() {
            if v as usize >= n {
                return domain(format!("image of {i} is {v}, outside 0..{n}"));
            }
            if v as usize == i {
                return Err(Error::Domain(format!("{i} is a fixed point")));
            }
        }
        Ok(Mapping { image })
    }

    /// From 1-based images, as mappings are usually written.
    pub fn from_one_based(image: &[u32]) -> Result<Self> {
        if image.contains(&0) {
            return domain("1-based image contains 0");
        }
        Mapping::new(image.iter().map(|&v| v - 1).collect())
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }
}

/// Fill `image` with a uniform mapping on `image.len()` points without fixed
/// points: a uniform `u` in `0..n-1` is sent to `u` below `i` and `u + 1`
/// otherwise.
pub fn fill_mapping<R: Rng + ?Sized>(image: &mut [u32], rng: &mut R) {
    let n = image.len() as u32;
    for (i, slot) in image.iter_mut().enumerate() {
        let u = rng.random_range(0..n - 1);
        *slot = if u < i as u32 { u } else { u + 1 };
    }
}

pub fn sample_mapping<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Mapping> {
    if n < 2 {
        return domain(format!("sample_mapping needs n >= 2, got {n}"));
    }
    let mut image = vec![0; n];
    fill_mapping(&mut image, rng);
    Ok(Mapping { image })
}

/// Components and cycles of a mapping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub component_sizes: Spectrum,
    pub cycle_lengths: Spectrum,
    pub core_size: usize,
    /// `cyclic[i]` is true when `i` lies on a cycle.
    pub cyclic: Vec<bool>,
    /// Component index of each point, numbered in order of discovery.
    pub component_of: Vec<u32>,
    /// `(component size, cycle length)` per component, in discovery order.
    pub components: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }
}

const UNVISITED: u8 = 0;
const ON_PATH: u8 = 1;
const DONE: u8 = 2;

/// Reusable buffers for decomposing many mappings of the same size.
#[derive(Debug, Clone, Default)]
pub struct Decomposer {
    state: Vec<u8>,
    comp: Vec<u32>,
    path: Vec<u32>,
    cyclic: Vec<bool>,
    sizes: Vec<usize>,
    cycles: Vec<usize>,
}

impl Decomposer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Walks from each unvisited point until the path closes on itself (a
    /// new cycle) or reaches a point already assigned to a component. Points
    /// on the path are then assigned without recursion.
    fn run(&mut self, image: &[u32]) {
        let n = image.len();
        self.state.clear();
        self.state.resize(n, UNVISITED);
        self.comp.clear();
        self.comp.resize(n, 0);
        self.cyclic.clear();
        self.cyclic.resize(n, false);
        self.sizes.clear();
        self.cycles.clear();
        for start in 0..n {
            if self.state[start] != UNVISITED {
                continue;
            }
            self.path.clear();
            let mut x = start;
            while self.state[x] == UNVISITED {
                self.state[x] = ON_PATH;
                self.path.push(x as u32);
                x = image[x] as usize;
            }
            let c = if self.state[x] == ON_PATH {
                let c = self.sizes.len() as u32;
                let pos = self.path.iter().rposition(|&p| p as usize == x).unwrap();
                for &p in &self.path[pos..] {
                    self.cyclic[p as usize] = true;
                }
                self.sizes.push(0);
                self.cycles.push(self.path.len() - pos);
                c
            } else {
                self.comp[x]
            };
            for &p in &self.path {
                self.state[p as usize] = DONE;
                self.comp[p as usize] = c;
            }
            self.sizes[c as usize] += self.path.len();
        }
    }

    /// Only the two spectra, without per-point output.
    pub fn spectra(&mut self, image: &[u32], components: &mut Spectrum, cycles: &mut Spectrum) {
        self.run(image);
        components.clear();
        cycles.clear();
        for (&s, &c) in self.sizes.iter().zip(&self.cycles) {
            components.push(s);
            cycles.push(c);
        }
    }

    pub fn decompose(&mut self, m: &Mapping) -> Decomposition {
        let n = m.n();
        self.run(&m.image);
        let components: Vec<(usize, usize)> = self
            .sizes
            .iter()
            .copied()
            .zip(self.cycles.iter().copied())
            .collect();
        Decomposition {
            component_sizes: Spectrum::from_parts(n, self.sizes.iter().copied()),
            cycle_lengths: Spectrum::from_parts(n, self.cycles.iter().copied()),
            core_size: self.cycles.iter().sum(),
            cyclic: self.cyclic.clone(),
            component_of: self.comp.clone(),
            components,
        }
    }
}

pub fn decompose(m: &Mapping) -> Decomposition {
    Decomposer::new().decompose(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::RngStream;

    #[test]
    fn twenty_point_example() {
        let b = [
            2, 14, 7, 1, 7, 19, 17, 11, 10, 13, 2, 14, 9, 8, 19, 10, 6, 16, 6, 19,
        ];
        let d = decompose(&Mapping::from_one_based(&b).unwrap());
        assert_eq!(d.component_sizes, Spectrum::from_parts(20, [5, 7, 8]));
        assert_eq!(d.cycle_lengths, Spectrum::from_parts(20, [3, 4, 2]));
        assert_eq!(d.core_size, 9);
        let core: Vec<usize> = (0..20).filter(|&i| d.cyclic[i]).map(|i| i + 1).collect();
        assert_eq!(core, vec![2, 6, 8, 9, 10, 11, 13, 14, 19]);
    }

    #[test]
    fn small_hand_traces() {
        let d = decompose(&Mapping::from_one_based(&[2, 1]).unwrap());
        assert_eq!(d.component_sizes, Spectrum::from_parts(2, [2]));
        assert_eq!(d.cycle_lengths, Spectrum::from_parts(2, [2]));
        let d = decompose(&Mapping::from_one_based(&[2, 1, 2, 3]).unwrap());
        assert_eq!(d.component_sizes, Spectrum::from_parts(4, [4]));
        assert_eq!(d.cycle_lengths, Spectrum::from_parts(4, [2]));
        assert_eq!(d.core_size, 2);
        assert_eq!(d.cyclic, vec![true, true, false, false]);
    }

    #[test]
    fn rejects_fixed_points() {
        assert!(Mapping::from_one_based(&[1, 1]).is_err());
        assert!(Mapping::new(vec![1, 5]).is_err());
        assert!(Mapping::new(vec![0]).is_err());
        assert!(sample_mapping(1, &mut RngStream::new(0)).is_err());
    }

    #[test]
    fn two_points_is_forced() {
        let mut rng = RngStream::new(3);
        for _ in 0..20 {
            assert_eq!(sample_mapping(2, &mut rng).unwrap().image(), &[1, 0]);
        }
    }

    #[test]
    fn long_path_does_not_recurse() {
        // i -> i+1, last two swap: one component, one 2-cycle.
        let n = 1_000_000u32;
        let mut image: Vec<u32> = (1..=n).collect();
        image[(n - 1) as usize] = n - 2;
        let d = decompose(&Mapping::new(image).unwrap());
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.core_size, 2);
        assert_eq!(d.component_sizes.count(n as usize), 1);
    }

    #[test]
    fn spectra_matches_decompose() {
        let mut rng = RngStream::new(11);
        let mut dec = Decomposer::new();
        let (mut a, mut c) = (Spectrum::empty(30), Spectrum::empty(30));
        for _ in 0..200 {
            let m = sample_mapping(30, &mut rng).unwrap();
            dec.spectra(m.image(), &mut a, &mut c);
            let d = decompose(&m);
            assert_eq!(a, d.component_sizes);
            assert_eq!(c, d.cycle_lengths);
        }
    }
}
