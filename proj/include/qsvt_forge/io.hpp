// Copyright 2026 The qsvt-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats.
//
// Matrix file: '#' starts a comment. Header "n" (real entries) or
// "n complex" (pairs re im), followed by the n*n entries in row-major order.
//
// Tensor problem file: header "n p K s". K > 0: K*p symmetric n x n factor
// matrices follow, term by term. K = 0: one n^p x n^p matrix follows. s is
// the declared row sparsity of A; the measured one must not exceed it.

#ifndef QSVT_FORGE_IO_HPP
#define QSVT_FORGE_IO_HPP

#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qsvt_forge/block_encoding.hpp"
#include "qsvt_forge/graddesc.hpp"

namespace qsvt_forge::io {

namespace detail {

inline std::vector<std::string> tokens(std::istream &in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) out.push_back(t);
  }
  return out;
}

inline std::vector<std::string> file_tokens(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return tokens(in);
}

inline double to_double(const std::string &t, const std::string &what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception &) {
    throw ValidationError(what + ": '" + t + "' is not a number");
  }
}

inline std::size_t to_size(const std::string &t, const std::string &what) {
  const double v = to_double(t, what);
  if (v < 0 || v != std::floor(v)) throw ValidationError(what + ": '" + t + "' is not a non-negative integer");
  return std::size_t(v);
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline Mat parse_matrix(std::istream &in, const std::string &what = "matrix") {
  const auto tok = detail::tokens(in);
  if (tok.empty()) throw ValidationError(what + ": empty input");
  const std::size_t n = detail::to_size(tok[0], what + " header");
  if (n == 0) throw ValidationError(what + ": dimension must be positive");
  std::size_t pos = 1;
  bool cpx = false;
  if (tok.size() > 1 && tok[1] == "complex") {
    cpx = true;
    pos = 2;
  }
  const std::size_t need = n * n * (cpx ? 2 : 1);
  if (tok.size() - pos != need)
    throw ValidationError(what + ": expected " + std::to_string(need) + " entries, found " +
                          std::to_string(tok.size() - pos));
  Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = detail::to_double(tok[pos++], what);
      const double im = cpx ? detail::to_double(tok[pos++], what) : 0.0;
      m(Eigen::Index(i), Eigen::Index(j)) = cplx(re, im);
    }
  return m;
}

inline Mat read_matrix(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  return parse_matrix(in, path);
}

inline std::string format_matrix(const Mat &m) {
  require(m.rows() == m.cols(), "format_matrix: matrix must be square");
  const bool cpx = m.imag().cwiseAbs().maxCoeff() > 0;
  std::string out = std::to_string(m.rows()) + (cpx ? " complex\n" : "\n");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += detail::fmt(m(i, j).real());
      if (cpx) out += ' ' + detail::fmt(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

inline void write_matrix(const std::string &path, const Mat &m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << format_matrix(m);
}

inline grad::TensorPolynomial parse_tensor(std::istream &in, const std::string &what = "tensor") {
  const auto tok = detail::tokens(in);
  if (tok.size() < 4) throw ValidationError(what + ": header 'n p K s' missing");
  const std::size_t n = detail::to_size(tok[0], what + " n");
  const std::size_t p = detail::to_size(tok[1], what + " p");
  const std::size_t k = detail::to_size(tok[2], what + " K");
  const std::size_t s = detail::to_size(tok[3], what + " s");
  if (n == 0 || p == 0) throw ValidationError(what + ": n and p must be positive");
  std::size_t pos = 4;
  auto read_real = [&](std::size_t dim) {
    if (tok.size() - pos < dim * dim) throw ValidationError(what + ": not enough entries");
    RMat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(Eigen::Index(i), Eigen::Index(j)) = detail::to_double(tok[pos++], what);
    return m;
  };
  grad::TensorPolynomial prob;
  if (k > 0) {
    std::vector<std::vector<RMat>> terms(k);
    for (auto &t : terms)
      for (std::size_t m = 0; m < p; ++m) t.push_back(read_real(n));
    prob = grad::TensorPolynomial::from_factors(std::move(terms));
  } else {
    prob = grad::TensorPolynomial::from_matrix(n, p, read_real(linalg::product(std::vector<std::size_t>(p, n))));
  }
  if (pos != tok.size()) throw ValidationError(what + ": trailing entries");
  if (s > 0 && prob.sparsity() > s)
    throw ValidationError(what + ": measured sparsity " + std::to_string(prob.sparsity()) + " exceeds declared " +
                          std::to_string(s));
  return prob;
}

inline grad::TensorPolynomial read_tensor(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  return parse_tensor(in, path);
}

inline std::string format_tensor(const grad::TensorPolynomial &prob) {
  std::string out = std::to_string(prob.n) + " " + std::to_string(prob.p) + " " + std::to_string(prob.terms.size()) +
                    " " + std::to_string(prob.sparsity()) + "\n";
  auto put = [&](const RMat &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? " " : "") + detail::fmt(m(i, j));
      out += '\n';
    }
  };
  if (prob.has_factors()) {
    for (const auto &t : prob.terms)
      for (const auto &f : t) put(f);
  } else {
    put(prob.direct);
  }
  return out;
}

/// key = value lines; '#' comments.
inline std::map<std::string, std::string> read_kv_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline constexpr char kEncodingMagic[8] = {'Q', 'S', 'V', 'T', 'B', 'E', '0', '1'};

/// Binary container: magic, anc_dim and sys_dim as uint64, then the unitary
/// as column-major (re, im) doubles. Metadata goes to a JSON sidecar written
/// by the caller.
inline void write_encoding_binary(const std::string &path, const BlockEncoding &be) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out.write(kEncodingMagic, sizeof kEncodingMagic);
  const std::uint64_t dims[2] = {be.anc_dim, be.sys_dim};
  out.write(reinterpret_cast<const char *>(dims), sizeof dims);
  out.write(reinterpret_cast<const char *>(be.unitary.data()), std::streamsize(sizeof(cplx) * be.unitary.size()));
}

inline BlockEncoding read_encoding_binary(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kEncodingMagic, sizeof magic) != 0)
    throw ValidationError(path + ": not a block-encoding file");
  std::uint64_t dims[2];
  in.read(reinterpret_cast<char *>(dims), sizeof dims);
  if (!in || dims[0] == 0 || dims[1] == 0 || dims[0] * dims[1] > (1u << 16))
    throw ValidationError(path + ": bad dimensions");
  BlockEncoding be;
  be.anc_dim = dims[0];
  be.sys_dim = dims[1];
  const Eigen::Index d = Eigen::Index(dims[0] * dims[1]);
  be.unitary.resize(d, d);
  in.read(reinterpret_cast<char *>(be.unitary.data()), std::streamsize(sizeof(cplx) * be.unitary.size()));
  if (!in) throw ValidationError(path + ": truncated");
  return be;
}

}  // namespace qsvt_forge::io

#endif
