#include "netcast/model_io.hpp"

#include "check.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>

namespace netcast {

namespace {

constexpr char kMagic[4] = {'N', 'C', 'W', '1'};

class Reader {
public:
  explicit Reader(const std::vector<std::uint8_t>& b) : bytes_(b) {}

  void need(std::size_t n, const char* what) const {
    if (pos_ + n > bytes_.size())
      throw TruncatedError(detail::concat("NCW1 truncated while reading ", what, ": expected at least ",
                                          pos_ + n, " bytes, file has ", bytes_.size()));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  float f32() {
    const std::uint32_t u = u32();
    float f;
    std::memcpy(&f, &u, sizeof f);
    return f;
  }
  double f64() {
    const std::uint64_t u = u64();
    double d;
    std::memcpy(&d, &u, sizeof d);
    return d;
  }
  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) { pos_ += n; }

private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, double v) {
  const float f = static_cast<float>(v);
  std::uint32_t u;
  std::memcpy(&u, &f, sizeof u);
  put_u32(out, u);
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  put_u64(out, u);
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return (static_cast<std::uint32_t>(b[at]) << 24) | (static_cast<std::uint32_t>(b[at + 1]) << 16) |
         (static_cast<std::uint32_t>(b[at + 2]) << 8) | static_cast<std::uint32_t>(b[at + 3]);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  const auto name = path.string();
  if (name.size() > 3 && name.compare(name.size() - 3, 3, ".gz") == 0) {
    std::unique_ptr<gzFile_s, int (*)(gzFile)> gz(gzopen(name.c_str(), "wb"), gzclose);
    if (!gz)
      detail::io_error("cannot open ", name, " for writing");
    if (!bytes.empty() &&
        gzwrite(gz.get(), bytes.data(), static_cast<unsigned>(bytes.size())) !=
            static_cast<int>(bytes.size()))
      detail::io_error("write failed for ", name);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    detail::io_error("cannot open ", name, " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f)
    detail::io_error("write failed for ", name);
}

} // namespace

DnnModel parse_ncw1(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  r.need(4, "magic");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("not an NCW1 weight file (bad magic bytes)");
  r.skip(4);
  r.need(4, "layer count");
  const std::uint32_t n_layers = r.u32();
  if (n_layers == 0)
    throw DimensionError("NCW1 file declares zero layers");

  DnnModel model;
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    r.need(16, "layer header");
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    const double scale = r.f64();
    if (rows == 0 || cols == 0)
      throw DimensionError(detail::concat("NCW1 layer ", l, " has shape ", rows, "x", cols));
    if (l > 0 && cols != model.layers.back().weights.rows())
      throw DimensionError(detail::concat("NCW1 dimension chain broken: layer ", l, " has ", cols,
                                          " inputs but layer ", l - 1, " has ",
                                          model.layers.back().weights.rows(), " outputs"));
    const std::size_t payload = 4 * (static_cast<std::size_t>(rows) * cols + rows);
    r.need(payload, "layer data");
    DenseLayer layer;
    layer.scale = scale;
    layer.weights = Matrix(rows, cols);
    for (double& w : layer.weights.values())
      w = r.f32();
    layer.bias.resize(rows);
    for (double& b : layer.bias)
      b = r.f32();
    model.layers.push_back(std::move(layer));
  }
  if (r.pos() != bytes.size())
    throw FormatError(detail::concat("NCW1 file has ", bytes.size() - r.pos(),
                                     " trailing bytes after the last layer"));
  return model;
}

std::vector<std::uint8_t> serialize_ncw1(const DnnModel& model) {
  if (model.layers.empty())
    detail::domain_error("cannot write a model with no layers");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(model.layers.size()));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& L = model.layers[l];
    if (L.bias.size() != L.weights.rows())
      detail::domain_error("layer ", l, " bias length ", L.bias.size(), " != rows ",
                           L.weights.rows());
    if (l > 0 && L.weights.cols() != model.layers[l - 1].weights.rows())
      detail::domain_error("layer ", l, " breaks the dimension chain");
    put_u32(out, static_cast<std::uint32_t>(L.weights.rows()));
    put_u32(out, static_cast<std::uint32_t>(L.weights.cols()));
    put_f64(out, L.scale);
    for (double w : L.weights.values())
      put_f32(out, w);
    for (double b : L.bias)
      put_f32(out, b);
  }
  return out;
}

std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path) {
  const auto name = path.string();
  if (!std::filesystem::exists(path))
    detail::io_error("file not found: ", name);
  // gzread passes uncompressed files through unchanged
  std::unique_ptr<gzFile_s, int (*)(gzFile)> gz(gzopen(name.c_str(), "rb"), gzclose);
  if (!gz)
    detail::io_error("cannot open ", name);
  std::vector<std::uint8_t> out;
  std::uint8_t buf[1 << 16];
  for (;;) {
    const int n = gzread(gz.get(), buf, sizeof buf);
    if (n < 0)
      detail::io_error("read error in ", name);
    if (n == 0)
      break;
    out.insert(out.end(), buf, buf + n);
  }
  return out;
}

DnnModel load_model(const std::filesystem::path& path) {
  const auto bytes = read_maybe_gzip(path);
  try {
    return parse_ncw1(bytes);
  } catch (const IoError& e) {
    // keep the subtype, add the path
    if (dynamic_cast<const TruncatedError*>(&e))
      throw TruncatedError(path.string() + ": " + e.what());
    if (dynamic_cast<const DimensionError*>(&e))
      throw DimensionError(path.string() + ": " + e.what());
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_model(const DnnModel& model, const std::filesystem::path& path) {
  write_bytes(path, serialize_ncw1(model));
}

Dataset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const auto ib = read_maybe_gzip(images);
  const auto lb = read_maybe_gzip(labels);
  if (ib.size() < 16 || be32(ib, 0) != 0x00000803)
    throw FormatError(images.string() + ": not an IDX image file (magic 0x00000803 expected)");
  if (lb.size() < 8 || be32(lb, 0) != 0x00000801)
    throw FormatError(labels.string() + ": not an IDX label file (magic 0x00000801 expected)");
  const std::size_t n = be32(ib, 4);
  const std::size_t rows = be32(ib, 8);
  const std::size_t cols = be32(ib, 12);
  const std::size_t nl = be32(lb, 4);
  if (n != nl)
    throw DimensionError(detail::concat("image/label count mismatch: ", images.string(), " has ", n,
                                        " images, ", labels.string(), " has ", nl, " labels"));
  const std::size_t px = rows * cols;
  if (ib.size() != 16 + n * px)
    throw TruncatedError(detail::concat(images.string(), ": expected ", 16 + n * px,
                                        " bytes, got ", ib.size()));
  if (lb.size() != 8 + n)
    throw TruncatedError(detail::concat(labels.string(), ": expected ", 8 + n, " bytes, got ",
                                        lb.size()));
  Dataset d;
  d.pixels = px;
  d.images.resize(n * px);
  for (std::size_t i = 0; i < n * px; ++i)
    d.images[i] = ib[16 + i] / 255.0;
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.labels[i] = lb[8 + i];
    if (d.labels[i] > 9)
      throw FormatError(detail::concat(labels.string(), ": label ", d.labels[i], " at index ", i,
                                       " outside 0-9"));
  }
  return d;
}

Dataset load_mnist_dir(const std::filesystem::path& dir) {
  auto pick = [&](const char* stem) {
    const auto plain = dir / stem;
    if (std::filesystem::exists(plain))
      return plain;
    auto gz = dir / (std::string(stem) + ".gz");
    if (std::filesystem::exists(gz))
      return gz;
    detail::io_error("neither ", plain.string(), " nor ", gz.string(), " exists");
  };
  return load_mnist(pick("t10k-images-idx3-ubyte"), pick("t10k-labels-idx1-ubyte"));
}

void write_idx_images(const std::filesystem::path& path, const Dataset& data, std::uint32_t rows,
                      std::uint32_t cols) {
  if (static_cast<std::size_t>(rows) * cols != data.pixels)
    detail::domain_error("IDX shape ", rows, "x", cols, " does not match ", data.pixels, " pixels");
  std::vector<std::uint8_t> out;
  put_be32(out, 0x00000803);
  put_be32(out, static_cast<std::uint32_t>(data.count()));
  put_be32(out, rows);
  put_be32(out, cols);
  for (double v : data.images)
    out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  write_bytes(path, out);
}

void write_idx_labels(const std::filesystem::path& path, const Dataset& data) {
  std::vector<std::uint8_t> out;
  put_be32(out, 0x00000801);
  put_be32(out, static_cast<std::uint32_t>(data.count()));
  for (int l : data.labels)
    out.push_back(static_cast<std::uint8_t>(l));
  write_bytes(path, out);
}

} // namespace netcast
