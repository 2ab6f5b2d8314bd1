#pragma once

// framekit <validate|excess|minnorm|kernel|c0|hilbert> <frame-file> [flags]
//
// Reports go to `out` as deterministic JSON, diagnostics to `err`.
// Exit codes: 0 success, 1 analysis failure, 2 unreadable input or usage.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "framekit/framekit.hpp"

namespace framekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

/// FRAMEKIT_SEED, default 0.
inline std::uint64_t sampling_seed() {
  const char* env = std::getenv("FRAMEKIT_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw ParseError(std::string("FRAMEKIT_SEED is not an unsigned integer: ") + env);
  }
}

/// 0-based indices as the 1-based list users see.
inline json one_based(const IndexSet& s) {
  json arr = json::array();
  for (auto i : s) arr.push_back(i + 1);
  return arr;
}

inline IndexSet zero_based(const std::vector<long long>& s, Eigen::Index n) {
  IndexSet out;
  for (auto i : s) {
    if (i < 1 || i > n) {
      throw InvalidDeletion("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    out.push_back(static_cast<std::size_t>(i - 1));
  }
  return out;
}

inline json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

/// One row per column of `m`.
inline json columns_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) rows.push_back(vector_json(m.col(j)));
  return rows;
}

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::vector<std::string> warnings;
  std::string error;

  json to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["warnings"] = warnings;
    if (!error.empty()) j["error"] = error;
    return j;
  }
};

inline json validation_json(const ValidationReport& v, double tol) {
  return json{{"residual", v.residual}, {"ok", v.ok}, {"tol", tol}, {"zero_columns", one_based(v.zero_columns)}};
}

inline std::vector<double> parse_coeff_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return json::parse(text).get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("coefficient file: ") + e.what());
    }
  }
  std::string cleaned = text;
  for (auto& ch : cleaned) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream is(cleaned);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("coefficient file: bad number '" + tok + "'");
    }
  }
  return out;
}

inline std::vector<CoeffVec> parse_block_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("block file: ") + e.what());
  }
  const json& rows = j.is_object() && j.contains("blocks") ? j.at("blocks") : j;
  if (!rows.is_array()) throw ParseError("block file must hold an array of blocks");
  std::vector<CoeffVec> blocks;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("each block must be an array of numbers");
    CoeffVec u(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) throw ParseError("block entries must be numbers");
      u[static_cast<Eigen::Index>(i)] = row[i].get<double>();
    }
    blocks.push_back(std::move(u));
  }
  return blocks;
}

struct Options {
  std::string path;
  double tol = kDefaultValidationTol;
  std::vector<double> coeffs;
  std::string coeffs_file;
  bool tail = false;
  std::string method = "numerical";
  std::vector<long long> sigma;
  bool sigma_given = false;
  std::string blocks = "example";
  int resolution = 5;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int validate(const Options& o) {
    Report rep = start("validate", o);
    const FiniteFrame fr = file_.frame();
    const ValidationReport v = framekit::validate(fr, o.tol);
    rep.results = validation_json(v, o.tol);
    if (!v.zero_columns.empty()) rep.warnings.push_back("zero vector or functional columns present");
    return finish(rep, v.ok ? kExitOk : kExitFailure);
  }

  int excess(const Options& o) {
    Report rep = start("excess", o);
    const FiniteFrame fr = file_.frame();
    const ValidationReport v = framekit::validate(fr, o.tol);
    if (!v.ok) {
      rep.results["validation"] = validation_json(v, o.tol);
      rep.warnings.push_back("frame failed validation; excess not computed");
      return finish(rep, kExitFailure);
    }
    const ExcessReport ex = framekit::excess(fr);
    rep.results = json{{"kernel_dim", ex.kernel_dim},
                       {"deletion_excess", ex.deletion_excess},
                       {"witness_sigma", one_based(ex.witness_sigma)},
                       {"witness_source", to_string(ex.witness_source)},
                       {"agree", ex.agree}};
    return finish(rep, ex.agree ? kExitOk : kExitFailure);
  }

  int minnorm(const Options& o) {
    Report rep = start("minnorm", o);
    const FiniteFrame fr = file_.frame();
    std::vector<double> raw = o.coeffs;
    if (!o.coeffs_file.empty()) raw = parse_coeff_text(read_text_file(o.coeffs_file));
    if (raw.empty()) throw ParseError("no coefficients given (use --coeffs or --coeffs-file)");
    if (static_cast<Eigen::Index>(raw.size()) != fr.size()) {
      throw ParseError("got " + std::to_string(raw.size()) + " coefficients, frame has N = " +
                       std::to_string(fr.size()));
    }
    const CoeffVec a = Eigen::Map<const CoeffVec>(raw.data(), static_cast<Eigen::Index>(raw.size()));
    const SegmentMax best = max_segment(fr, a);
    rep.results["min_norm"] = best.value;
    rep.results["argmax_segment"] = json{{"m", best.m + 1}, {"n", best.n + 1}};
    if (o.tail) rep.results["tail_profile"] = tail_profile(fr, a);
    if (is_degenerate_truncation(fr)) rep.warnings.push_back("degenerate truncation: some x_i = 0");
    return finish(rep, kExitOk);
  }

  int kernel(const Options& o) {
    Report rep = start("kernel", o);
    const FiniteFrame fr = file_.frame();
    if (!framekit::validate(fr, o.tol).ok) rep.warnings.push_back("frame failed validation");
    const bool numerical = o.method == "numerical" || o.method == "both";
    const bool biorthogonal = o.method == "biorthogonal" || o.method == "both";
    KernelBasis num, bio;
    if (numerical) {
      num = kernel_basis_numerical(fr);
      rep.results["numerical"] = json{{"dim", num.dim()}, {"basis", columns_json(num.vectors)}};
    }
    if (biorthogonal) {
      IndexSet sigma;
      std::string sigma_source = "given";
      if (o.sigma_given) {
        sigma = zero_based(o.sigma, fr.size());
      } else {
        sigma = deletion_search(fr).sigma;
        sigma_source = "deletion_search";
      }
      bio = kernel_basis_biorthogonal(fr, sigma);
      rep.results["biorthogonal"] = json{{"dim", bio.dim()},
                                         {"sigma", one_based(bio.sigma)},
                                         {"sigma_source", sigma_source},
                                         {"basis", columns_json(bio.vectors)}};
    }
    if (numerical && biorthogonal) rep.results["span_residual"] = span_distance(num.vectors, bio.vectors);
    return finish(rep, kExitOk);
  }

  int c0(const Options& o) {
    Report rep = start("c0", o);
    const FiniteFrame fr = file_.frame();
    const std::uint64_t seed = sampling_seed();
    std::optional<BlockSeq> bs;
    json blocks_info;
    blocks_info["source"] = o.blocks;
    if (o.blocks == "example") {
      bs.emplace(example_blocks(fr));
    } else if (o.blocks == "auto") {
      const KernelBlockExtraction ex = extract_kernel_blocks(fr);
      json diags = json::array();
      for (const auto& dg : ex.diagnostics) {
        diags.push_back(json{{"start", dg.start + 1},
                             {"end", dg.end + 1},
                             {"eps", dg.eps},
                             {"delta", dg.delta},
                             {"tail_min_norm", dg.tail_min_norm},
                             {"head_image_norm", dg.head_image_norm},
                             {"block_min_norm", dg.block_min_norm},
                             {"semi_normalized", dg.semi_normalized}});
      }
      blocks_info["diagnostics"] = diags;
      blocks_info["message"] = ex.message;
      if (!ex.blocks) {
        blocks_info["count"] = 0;
        rep.results["blocks"] = blocks_info;
        rep.warnings.push_back(ex.message);
        return finish(rep, kExitOk);
      }
      bs = ex.blocks;
    } else {
      std::vector<CoeffVec> raw = parse_block_file(read_text_file(o.blocks));
      blocks_info["source"] = "file";
      blocks_info["path"] = o.blocks;
      for (const auto& u : raw) {
        if (u.size() != fr.size()) throw ParseError("block length does not match N");
      }
      bs.emplace(std::move(raw));
    }
    blocks_info["count"] = bs->count();
    json supports = json::array();
    for (const auto& iv : bs->supports()) supports.push_back(json::array({iv.first + 1, iv.last + 1}));
    blocks_info["supports"] = supports;
    rep.results["blocks"] = blocks_info;

    const C0Constants c = c0_constants(fr, *bs, o.resolution, seed);
    rep.results["A"] = c.A;
    rep.results["B"] = c.B;
    rep.results["distortion"] = c.distortion;
    rep.results["A_mode"] = c.A_mode;
    rep.results["resolution"] = c.resolution;
    rep.results["samples"] = c.samples;
    rep.results["seed"] = seed;
    rep.results["A_witness"] = vector_json(c.A_witness);
    rep.results["B_witness"] = vector_json(c.B_witness);
    if (o.blocks == "example") {
      constexpr double kBoundTol = 1e-9;
      rep.results["bounds_check"] = json{{"tol", kBoundTol},
                                         {"lower_ok", c.A >= 1.0 - kBoundTol},
                                         {"upper_ok", c.B <= 2.0 + kBoundTol}};
    }
    return finish(rep, kExitOk);
  }

  int hilbert(const Options& o) {
    Report rep = start("hilbert", o);
    const HilbertFrame hf = file_.hilbert_frame();
    if (file_.norm.p() != 2.0) {
      rep.warnings.push_back("ambient norm in file ignored; Hilbert analysis uses l_2");
    }
    const HilbertReport hr = near_riesz_report(hf);
    const FiniteFrame dual = canonical_dual(hf);
    const ExcessReport ex = framekit::excess(dual);
    rep.results = json{{"frame_bounds", json{{"lower", hr.frame_bounds.lower}, {"upper", hr.frame_bounds.upper}}},
                       {"excess", hr.excess},
                       {"besselian_constant", hr.besselian_constant},
                       {"is_parseval", hr.is_parseval},
                       {"pre_frame_norm", pre_frame_norm(hf)},
                       {"canonical_dual", columns_json(dual.functionals())},
                       {"dual_validation_residual", framekit::validate(dual).residual},
                       {"deletion_excess", ex.deletion_excess},
                       {"agree", ex.agree && ex.deletion_excess == hr.excess}};
    return finish(rep, kExitOk);
  }

  /// Loads the frame file; parse failures map to exit 2, everything else
  /// thrown by a command maps to exit 1 with the message in the report.
  template <typename F>
  int dispatch(const std::string& command, const Options& o, F&& body) {
    try {
      text_ = read_text_file(o.path);
      file_ = parse_frame_text(text_);
    } catch (const Error& e) {
      err_ << "framekit " << command << ": " << e.what() << "\n";
      return kExitParse;
    }
    try {
      return body();
    } catch (const ParseError& e) {
      err_ << "framekit " << command << ": " << e.what() << "\n";
      return kExitParse;
    } catch (const Error& e) {
      err_ << "framekit " << command << ": " << e.what() << "\n";
      Report rep = start(command, o);
      rep.error = e.what();
      return finish(rep, kExitFailure);
    }
  }

 private:
  Report start(const std::string& command, const Options& o) const {
    Report rep;
    rep.command = command;
    rep.inputs = json{{"path", o.path}, {"sha256", sha256_hex(text_)}, {"d", file_.dim()}, {"N", file_.size()}};
    return rep;
  }

  int finish(const Report& rep, int code) {
    out_ << to_json_text(rep.to_json());
    return code;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::string text_;
  FrameFile file_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Finite Schauder frame analysis"};
  app.name("framekit");
  app.require_subcommand(1);
  Options o;

  auto add_path = [&](CLI::App* sub) {
    sub->add_option("frame-file", o.path, "Frame file (JSON)")->required();
  };
  auto* v = app.add_subcommand("validate", "Check the frame identity sum f_j(x) x_j = x");
  add_path(v);
  v->add_option("--tol", o.tol, "Max-abs residual tolerance");
  auto* e = app.add_subcommand("excess", "Excess as dim ker S and as a deletion witness");
  add_path(e);
  e->add_option("--tol", o.tol, "Validation tolerance");
  auto* m = app.add_subcommand("minnorm", "Minimal-associated norm of a coefficient vector");
  add_path(m);
  auto* coeffs = m->add_option("--coeffs", o.coeffs, "Comma-separated coefficients")->delimiter(',');
  m->add_option("--coeffs-file", o.coeffs_file, "File with coefficients (JSON array or whitespace list)")
      ->excludes(coeffs);
  m->add_flag("--tail-profile", o.tail, "Also report the tail profile");
  auto* k = app.add_subcommand("kernel", "Basis of ker S");
  add_path(k);
  k->add_option("--method", o.method, "numerical | biorthogonal | both")
      ->check(CLI::IsMember({"numerical", "biorthogonal", "both"}));
  auto* sig = k->add_option("--sigma", o.sigma, "Deleted indices (1-based) for the biorthogonal method")
                  ->delimiter(',');
  k->add_option("--tol", o.tol, "Validation tolerance");
  auto* c = app.add_subcommand("c0", "c_0-distortion constants of a block sequence");
  add_path(c);
  c->add_option("--blocks", o.blocks, "example | auto | <block file>");
  c->add_option("--resolution", o.resolution, "Grid levels per coordinate for the lower constant")
      ->check(CLI::Range(1, 1000));
  auto* h = app.add_subcommand("hilbert", "Hilbert-frame report (l_2 ambient)");
  add_path(h);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  o.sigma_given = sig->count() > 0;

  Runner runner(out, err);
  if (*v) return runner.dispatch("validate", o, [&] { return runner.validate(o); });
  if (*e) return runner.dispatch("excess", o, [&] { return runner.excess(o); });
  if (*m) return runner.dispatch("minnorm", o, [&] { return runner.minnorm(o); });
  if (*k) return runner.dispatch("kernel", o, [&] { return runner.kernel(o); });
  if (*c) return runner.dispatch("c0", o, [&] { return runner.c0(o); });
  return runner.dispatch("hilbert", o, [&] { return runner.hilbert(o); });
}

}  // namespace framekit::cli
