//! C ABI over `tetra-core`.
//!
//! Matrices cross the boundary as packed `uint16_t`: entry (p, q), both
//! zero-based, is bit `3p + q`. Every function returns a [`TetraStatus`];
//! results go through out-pointers. After a non-OK status,
//! [`tetra_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use tetra_core::gf2::{check_ds_tetra, check_modified_pair, Mat3};
use tetra_core::quantum::{quantize, Param, WeightedOp};
use tetra_core::search::{count_sixtuples, search_base, search_modified_pairs, with_threads, Candidates};
use tetra_core::store::{load_store, save_store};
use tetra_core::{Error, SolutionStore};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TetraStatus {
    Ok = 0,
    NullPointer = 1,
    /// Packed bits out of range, malformed text or bad UTF-8.
    InvalidArgument = 2,
    NotInvertible = 3,
    Io = 4,
    /// A store file failed to parse or verify.
    Format = 5,
    IndexOutOfRange = 6,
    /// The caller's buffer is too small. Count out-parameters are still set.
    BufferTooSmall = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Opaque list of base solutions.
pub struct TetraStore {
    inner: SolutionStore,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure(TetraStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::NotInvertible(_) => TetraStatus::NotInvertible,
            Error::Io { .. } => TetraStatus::Io,
            Error::StoreFormat { .. } => TetraStatus::Format,
            _ => TetraStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> TetraStatus {
    let result = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err(Failure(TetraStatus::Internal, "panic inside tetra-ffi".into())));
    match result {
        Ok(()) => TetraStatus::Ok,
        Err(Failure(status, message)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = message);
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TetraStatus::NullPointer, format!("{what} is null"))
}

fn mat(bits: u16) -> Result<Mat3, Failure> {
    Mat3::from_bits(bits).ok_or_else(|| {
        Failure(
            TetraStatus::InvalidArgument,
            format!("matrix bits {bits:#x} exceed 9 bits"),
        )
    })
}

fn out<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a valid, writable, aligned pointer.
    unsafe { ptr.as_mut() }.ok_or_else(|| null(what))
}

fn path_arg(path: *const c_char) -> Result<PathBuf, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    // SAFETY: non-null and NUL-terminated per the contract.
    let s = unsafe { CStr::from_ptr(path) }
        .to_str()
        .map_err(|_| Failure(TetraStatus::InvalidArgument, "path is not UTF-8".into()))?;
    Ok(PathBuf::from(s))
}

fn store_ref<'a>(store: *const TetraStore) -> Result<&'a TetraStore, Failure> {
    // SAFETY: non-null handles come from this library and are not yet freed.
    unsafe { store.as_ref() }.ok_or_else(|| null("store"))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tetra_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Parses `rrr/rrr/rrr` text into packed bits.
///
/// # Safety
/// `text` must be null or NUL-terminated; `out_bits` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_mat3_parse(text: *const c_char, out_bits: *mut u16) -> TetraStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(TetraStatus::InvalidArgument, "text is not UTF-8".into()))?;
        let m: Mat3 = s.parse()?;
        *out(out_bits, "out_bits")? = m.bits();
        Ok(())
    })
}

/// Writes `rrr/rrr/rrr` plus NUL; `buf` needs 12 bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tetra_mat3_format(bits: u16, buf: *mut c_char, len: usize) -> TetraStatus {
    guard(|| {
        let text = mat(bits)?.to_string();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < text.len() + 1 {
            return Err(Failure(
                TetraStatus::BufferTooSmall,
                format!("need {} bytes", text.len() + 1),
            ));
        }
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        Ok(())
    })
}

/// Direct-sum tetrahedron equation for `(r1, r2, r3, r4)`.
///
/// # Safety
/// `out_holds` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_check_ds(r1: u16, r2: u16, r3: u16, r4: u16, out_holds: *mut bool) -> TetraStatus {
    guard(|| {
        let holds = check_ds_tetra(mat(r1)?, mat(r2)?, mat(r3)?, mat(r4)?);
        *out(out_holds, "out_holds")? = holds;
        Ok(())
    })
}

/// Both mixed equations of a modified pair `(r4, q4)` over `(r1, r2, r3)`.
///
/// # Safety
/// `out_holds` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_check_modified(
    r1: u16,
    r2: u16,
    r3: u16,
    r4: u16,
    q4: u16,
    out_holds: *mut bool,
) -> TetraStatus {
    guard(|| {
        let holds = check_modified_pair(mat(r1)?, mat(r2)?, mat(r3)?, mat(r4)?, mat(q4)?);
        *out(out_holds, "out_holds")? = holds;
        Ok(())
    })
}

/// # Safety
/// `out_result` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_is_genuinely_3d(bits: u16, out_result: *mut bool) -> TetraStatus {
    guard(|| {
        let r = mat(bits)?.is_genuinely_3d();
        *out(out_result, "out_result")? = r;
        Ok(())
    })
}

/// Basis-state permutation of an invertible matrix: `out_map[x]` is the
/// image of state `x`, with coordinate 1 as the most significant bit.
///
/// # Safety
/// `out_map` must be null or point to 8 writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tetra_quantize(bits: u16, out_map: *mut u8) -> TetraStatus {
    guard(|| {
        let p = quantize(mat(bits)?)?;
        if out_map.is_null() {
            return Err(null("out_map"));
        }
        std::ptr::copy_nonoverlapping(p.map().as_ptr(), out_map, 8);
        Ok(())
    })
}

/// Number of nonzero entries of `a·Q(r) + b·Q(s)` for generic `a`, `b`.
///
/// # Safety
/// `out_count` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_vertex_count(r: u16, s: u16, out_count: *mut usize) -> TetraStatus {
    guard(|| {
        let w = WeightedOp::pencil(Param::Alpha, quantize(mat(r)?)?, Param::Beta, quantize(mat(s)?)?)?;
        *out(out_count, "out_count")? = w.vertex_count();
        Ok(())
    })
}

fn hand_out(store: SolutionStore, out_store: *mut *mut TetraStore) -> Outcome {
    let slot = out(out_store, "out_store")?;
    *slot = Box::into_raw(Box::new(TetraStore { inner: store }));
    Ok(())
}

/// Runs the exhaustive base search over GL(3, F2). `threads == 0` uses the
/// default pool. Free the result with [`tetra_store_free`].
///
/// # Safety
/// `out_store` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_search(threads: usize, out_store: *mut *mut TetraStore) -> TetraStatus {
    guard(|| {
        if out_store.is_null() {
            return Err(null("out_store"));
        }
        let store = with_threads(threads, || search_base(Candidates::Invertible, false))?;
        hand_out(store, out_store)
    })
}

/// # Safety
/// `path` must be null or NUL-terminated; `out_store` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_load(path: *const c_char, out_store: *mut *mut TetraStore) -> TetraStatus {
    guard(|| {
        let path = path_arg(path)?;
        if out_store.is_null() {
            return Err(null("out_store"));
        }
        hand_out(load_store(&path)?, out_store)
    })
}

/// Writes the store file and reports its checksum. `out_checksum` may be null.
///
/// # Safety
/// `store` must be a live handle or null; `path` NUL-terminated or null.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_save(
    store: *const TetraStore,
    path: *const c_char,
    out_checksum: *mut u64,
) -> TetraStatus {
    guard(|| {
        let store = store_ref(store)?;
        let sum = save_store(&store.inner, &path_arg(path)?)?;
        if let Some(c) = out_checksum.as_mut() {
            *c = sum;
        }
        Ok(())
    })
}

/// # Safety
/// `store` must be a live handle or null; `out_len` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_len(store: *const TetraStore, out_len: *mut usize) -> TetraStatus {
    guard(|| {
        let n = store_ref(store)?.inner.len();
        *out(out_len, "out_len")? = n;
        Ok(())
    })
}

/// Record `index` in canonical order as `r1, r2, r3, r4`.
///
/// # Safety
/// `store` must be a live handle or null; `out_record` null or 4 writable values.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_get(store: *const TetraStore, index: usize, out_record: *mut u16) -> TetraStatus {
    guard(|| {
        let records = store_ref(store)?.inner.records();
        let r = records.get(index).ok_or_else(|| {
            Failure(
                TetraStatus::IndexOutOfRange,
                format!("index {index} >= {}", records.len()),
            )
        })?;
        if out_record.is_null() {
            return Err(null("out_record"));
        }
        let packed = r.matrices().map(Mat3::bits);
        std::ptr::copy_nonoverlapping(packed.as_ptr(), out_record, 4);
        Ok(())
    })
}

/// Ordered six-tuple count and the count up to interchanging both pairs.
///
/// # Safety
/// `store` must be a live handle or null; out-pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_sixtuple_counts(
    store: *const TetraStore,
    out_raw: *mut u64,
    out_deduplicated: *mut u64,
) -> TetraStatus {
    guard(|| {
        let c = count_sixtuples(&store_ref(store)?.inner);
        *out(out_raw, "out_raw")? = c.raw;
        *out(out_deduplicated, "out_deduplicated")? = c.deduplicated;
        Ok(())
    })
}

/// Frees a handle. Null is ignored.
///
/// # Safety
/// `store` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tetra_store_free(store: *mut TetraStore) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// Modified pairs `(r4, q4)`, `r4 < q4`, for the triple. Writes up to
/// `capacity` pairs as consecutive `r4, q4` values into `out_pairs` and the
/// total number found into `out_count`. Returns `BufferTooSmall` if they do
/// not all fit; `out_pairs` may be null when `capacity` is 0.
///
/// # Safety
/// `out_pairs` must hold `2 * capacity` writable values; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn tetra_search_modified_pairs(
    r1: u16,
    r2: u16,
    r3: u16,
    out_pairs: *mut u16,
    capacity: usize,
    out_count: *mut usize,
) -> TetraStatus {
    guard(|| {
        let found = search_modified_pairs(mat(r1)?, mat(r2)?, mat(r3)?, Candidates::Invertible)?;
        *out(out_count, "out_count")? = found.len();
        if found.len() > capacity {
            return Err(Failure(
                TetraStatus::BufferTooSmall,
                format!("{} pairs, capacity {capacity}", found.len()),
            ));
        }
        if found.is_empty() {
            return Ok(());
        }
        if out_pairs.is_null() {
            return Err(null("out_pairs"));
        }
        for (i, p) in found.iter().enumerate() {
            *out_pairs.add(2 * i) = p.r4.bits();
            *out_pairs.add(2 * i + 1) = p.q4.bits();
        }
        Ok(())
    })
}
