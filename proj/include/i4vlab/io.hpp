#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "i4vlab/errors.hpp"
#include "i4vlab/latent.hpp"

namespace i4vlab {

inline void append_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void append_f64_le(std::string& out, double v) {
  append_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint64_t read_u64_le(const std::string& buf, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  return v;
}

inline double read_f64_le(const std::string& buf, std::size_t pos) {
  return std::bit_cast<double>(read_u64_le(buf, pos));
}

// Write-temp-then-rename so partially written artifacts are never observed.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline constexpr char kLatentMagic[9] = "NVSDLAT1";

// Flat binary latent: 8-byte magic, F and d as u64 LE, then F*d doubles
// LE, row-major by frame.
inline std::string latent_to_bytes(const VideoLatent& v) {
  std::string out;
  out.reserve(24 + 8 * static_cast<std::size_t>(v.frame_count()) * v.frame_dim());
  out.append(kLatentMagic, 8);
  append_u64_le(out, static_cast<std::uint64_t>(v.frame_count()));
  append_u64_le(out, static_cast<std::uint64_t>(v.frame_dim()));
  for (int f = 0; f < v.frame_count(); ++f)
    for (int j = 0; j < v.frame_dim(); ++j) append_f64_le(out, v.mat()(f, j));
  return out;
}

inline VideoLatent latent_from_bytes(const std::string& buf,
                                     const std::string& what = "latent") {
  if (buf.size() < 24 || buf.compare(0, 8, kLatentMagic, 8) != 0)
    throw IoError(what + ": bad magic or truncated header");
  const std::uint64_t F = read_u64_le(buf, 8);
  const std::uint64_t d = read_u64_le(buf, 16);
  if (F < 1 || d < 1 || F > (1u << 24) || d > (1u << 24))
    throw IoError(what + ": implausible dimensions");
  const std::size_t need = 24 + 8 * static_cast<std::size_t>(F) * d;
  if (buf.size() != need)
    throw IoError(what + ": payload size mismatch");
  Eigen::MatrixXd m(static_cast<int>(F), static_cast<int>(d));
  std::size_t pos = 24;
  for (std::uint64_t f = 0; f < F; ++f)
    for (std::uint64_t j = 0; j < d; ++j, pos += 8)
      m(static_cast<int>(f), static_cast<int>(j)) = read_f64_le(buf, pos);
  try {
    return VideoLatent(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw IoError(what + ": " + e.what());
  }
}

inline void save_latent(const VideoLatent& v, const std::filesystem::path& path) {
  atomic_write_file(path, latent_to_bytes(v));
}

inline VideoLatent load_latent(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw IoError("latent file not found: " + path.string());
  return latent_from_bytes(read_file(path), path.string());
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// One frame per row, comma separated, full precision.
inline std::string latent_to_csv(const VideoLatent& v) {
  std::string out;
  for (int f = 0; f < v.frame_count(); ++f) {
    for (int j = 0; j < v.frame_dim(); ++j) {
      if (j) out.push_back(',');
      out += format_double(v.mat()(f, j));
    }
    out.push_back('\n');
  }
  return out;
}

inline void save_latent_csv(const VideoLatent& v,
                            const std::filesystem::path& path) {
  atomic_write_file(path, latent_to_csv(v));
}

}  // namespace i4vlab
