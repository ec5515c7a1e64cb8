#pragma once

#include <filesystem>

#include "voxelaug/volume.hpp"

namespace voxelaug::nifti {

/// NIfTI-1 reader/writer (single-file .nii, optionally gzip-compressed).
///
/// Loading honors scl_slope/scl_inter and picks the affine from the sform
/// when sform_code > 0, else from the qform quaternion when qform_code > 0,
/// else from pixdim alone. Byte-swapped (big-endian) files are accepted.
///
/// Errors: ParseError for malformed or truncated files,
/// UnsupportedFormatError for datatypes outside the integer/real scalars,
/// DimensionalityError for anything that is not a single 3D volume.

Volume load_volume(const std::filesystem::path& path);

/// Label maps must hold integral values in [0, 255] after scaling.
LabelMap load_labels(const std::filesystem::path& path);

/// Writes FLOAT32 data. A ".gz" extension selects gzip compression.
/// Throws WriteError when the file cannot be written.
void save(const Volume& volume, const std::filesystem::path& path);

/// Writes UINT8 data.
void save(const LabelMap& labels, const std::filesystem::path& path);

/// Strips ".nii" / ".nii.gz" from a file name.
std::string stem(const std::filesystem::path& path);

/// True for names ending in ".nii" or ".nii.gz".
bool is_nifti_path(const std::filesystem::path& path);

}  // namespace voxelaug::nifti
