#pragma once

#include "netcast/dnn.hpp"
#include "netcast/errors.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace netcast {

/// NCW1 weight files.
///
/// "NCW1", u32 layer count, then per layer u32 rows, u32 cols, f64 scale,
/// rows*cols f32 weights (row-major, scaled) and rows f32 biases. All little-endian.
class FormatError : public IoError {
public:
  using IoError::IoError;
};
class TruncatedError : public IoError {
public:
  using IoError::IoError;
};
class DimensionError : public IoError {
public:
  using IoError::IoError;
};

DnnModel parse_ncw1(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> serialize_ncw1(const DnnModel& model);

DnnModel load_model(const std::filesystem::path& path);
void save_model(const DnnModel& model, const std::filesystem::path& path);

/// Whole file, gunzipped when compressed.
std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path);

/// IDX image/label pair; pixels are rescaled from bytes to [0, 1].
Dataset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels);

/// Looks for t10k-images-idx3-ubyte[.gz] and t10k-labels-idx1-ubyte[.gz] in dir.
Dataset load_mnist_dir(const std::filesystem::path& dir);

/// Writes IDX files (plain, or gzip when the name ends in .gz). Pixels are
/// stored as round(255 * v).
void write_idx_images(const std::filesystem::path& path, const Dataset& data, std::uint32_t rows,
                      std::uint32_t cols);
void write_idx_labels(const std::filesystem::path& path, const Dataset& data);

} // namespace netcast
