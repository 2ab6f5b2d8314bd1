#pragma once

// Frame files and deterministic JSON output.
//
// A frame file is a JSON object
//
//   { "d": 2, "N": 4, "norm": {"p": 2},
//     "vectors":     [[...], ...],    // N rows of length d, row j = x_j
//     "functionals": [[...], ...] }   // same shape; optional for Hilbert use
//
// with "p" a number >= 1 or the string "inf".

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "framekit/frame.hpp"
#include "framekit/hilbert.hpp"

namespace framekit {

using json = nlohmann::json;

struct FrameFile {
  NormSpec norm;
  Eigen::MatrixXd vectors;  // d x N
  std::optional<Eigen::MatrixXd> functionals;

  Eigen::Index dim() const { return vectors.rows(); }
  Eigen::Index size() const { return vectors.cols(); }

  FiniteFrame frame() const {
    if (!functionals) throw ParseError("frame file has no \"functionals\"");
    return FiniteFrame(vectors, *functionals, norm);
  }
  HilbertFrame hilbert_frame() const { return HilbertFrame(vectors); }
};

namespace detail {

inline Eigen::MatrixXd read_rows(const json& j, const char* key, Eigen::Index n, Eigen::Index d) {
  if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const json& rows = j.at(key);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    throw ParseError(std::string("\"") + key + "\" must be an array of N = " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd m(d, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw ParseError(std::string("\"") + key + "\" row " + std::to_string(r) + " must have d = " +
                       std::to_string(d) + " entries");
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" has a non-numeric entry");
      m(c, r) = v.get<double>();
    }
  }
  if (!m.allFinite()) throw ParseError(std::string("\"") + key + "\" has non-finite entries");
  return m;
}

inline json rows_of(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    json row = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string format_real(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void emit(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        emit(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          emit(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        emit(os, j[i], indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_real(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Deterministic JSON text: keys sorted, reals with 17 significant digits,
/// non-finite reals as the strings "inf", "-inf", "nan".
inline std::string to_json_text(const json& j, int indent = 2) {
  std::ostringstream os;
  detail::emit(os, j, indent, 0);
  os << "\n";
  return os.str();
}

inline NormSpec parse_norm(const json& j) {
  if (!j.contains("norm")) return NormSpec::l2();
  const json& n = j.at("norm");
  if (!n.is_object() || !n.contains("p")) throw ParseError("\"norm\" must be an object with key \"p\"");
  const json& p = n.at("p");
  if (p.is_string()) {
    if (p.get<std::string>() == "inf") return NormSpec::linf();
    throw ParseError("\"norm.p\" string must be \"inf\"");
  }
  if (!p.is_number()) throw ParseError("\"norm.p\" must be a number or \"inf\"");
  try {
    return NormSpec(p.get<double>());
  } catch (const InvalidNorm& e) {
    throw ParseError(e.what());
  }
}

inline json norm_to_json(const NormSpec& spec) {
  if (spec.is_inf()) return json{{"p", "inf"}};
  return json{{"p", spec.p()}};
}

inline FrameFile parse_frame(const json& j) {
  if (!j.is_object()) throw ParseError("frame file must be a JSON object");
  for (const char* key : {"d", "N"}) {
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 1) {
      throw ParseError(std::string("\"") + key + "\" must be a positive integer");
    }
  }
  const auto d = static_cast<Eigen::Index>(j.at("d").get<long long>());
  const auto n = static_cast<Eigen::Index>(j.at("N").get<long long>());
  FrameFile ff;
  ff.norm = parse_norm(j);
  ff.vectors = detail::read_rows(j, "vectors", n, d);
  if (j.contains("functionals") && !j.at("functionals").is_null()) {
    ff.functionals = detail::read_rows(j, "functionals", n, d);
  }
  return ff;
}

inline FrameFile parse_frame_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return parse_frame(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FrameFile load_frame(const std::string& path) { return parse_frame_text(read_text_file(path)); }

inline json frame_to_json(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd* functionals,
                          const NormSpec& spec) {
  json j;
  j["d"] = vectors.rows();
  j["N"] = vectors.cols();
  j["norm"] = norm_to_json(spec);
  j["vectors"] = detail::rows_of(vectors);
  if (functionals) j["functionals"] = detail::rows_of(*functionals);
  return j;
}

inline json frame_to_json(const FiniteFrame& fr) {
  return frame_to_json(fr.vectors(), &fr.functionals(), fr.norm_spec());
}

inline std::string write_frame_text(const FiniteFrame& fr) { return to_json_text(frame_to_json(fr)); }

inline void save_frame(const FiniteFrame& fr, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << write_frame_text(fr);
}

}  // namespace framekit
