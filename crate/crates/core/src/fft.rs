//! Cubic 3D FFTs built from rustfft line transforms.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// Unnormalized in-place transform of an `n x n x n` row-major cube.
pub fn fft3_inplace(data: &mut [Complex64], n: usize, direction: FftDirection) {
    assert_eq!(data.len(), n * n * n, "cube size mismatch");
    let fft = plan(n, direction);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    // contiguous axis: all rows in one call
    fft.process_with_scratch(data, &mut scratch);

    let mut lines = vec![Complex64::default(); n * n];
    // middle axis: gather each (i1, *, i3) line for a fixed i1 plane
    for i1 in 0..n {
        let plane = &mut data[i1 * n * n..(i1 + 1) * n * n];
        for i3 in 0..n {
            for i2 in 0..n {
                lines[i3 * n + i2] = plane[i2 * n + i3];
            }
        }
        fft.process_with_scratch(&mut lines, &mut scratch);
        for i3 in 0..n {
            for i2 in 0..n {
                plane[i2 * n + i3] = lines[i3 * n + i2];
            }
        }
    }
    // slowest axis: one (*, i2, i3) line per column, batched per i2
    for i2 in 0..n {
        for i3 in 0..n {
            for i1 in 0..n {
                lines[i3 * n + i1] = data[(i1 * n + i2) * n + i3];
            }
        }
        fft.process_with_scratch(&mut lines, &mut scratch);
        for i3 in 0..n {
            for i1 in 0..n {
                data[(i1 * n + i2) * n + i3] = lines[i3 * n + i1];
            }
        }
    }
}

pub fn forward(data: &mut [Complex64], n: usize) {
    fft3_inplace(data, n, FftDirection::Forward);
}

pub fn inverse(data: &mut [Complex64], n: usize) {
    fft3_inplace(data, n, FftDirection::Inverse);
}
