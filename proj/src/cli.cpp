#include "cayleychi/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cayleychi/cayley.hpp"
#include "cayleychi/certify.hpp"
#include "cayleychi/normalform.hpp"
#include "cayleychi/oracle.hpp"

namespace cayleychi::cli {

using nlohmann::json;

namespace {

struct CrossCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string matrix_text;
  std::string file;
  std::size_t radius = 7;
  std::string moduli;
  std::vector<std::string> extra;
  bool certificate = false;
  bool exact = false;
  std::string export_path;
  unsigned workers = 0;
  // sweep
  std::string family = "circulant";
  Int max_n = 30;
  Int bound = 12;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_all(f);
}

bool looks_like_json(const std::string& text) {
  auto it = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
  if (it == text.end()) return false;
  if (*it == '{') return true;
  if (*it != '[') return false;
  auto next = std::find_if(it + 1, text.end(), [](unsigned char c) { return !std::isspace(c); });
  return next != text.end() && *next == '[';
}

std::string input_text(const Options& o, std::istream& in) {
  if (!o.matrix_text.empty() && !o.file.empty()) throw ParseError("give either --matrix or --file, not both");
  if (!o.matrix_text.empty()) return o.matrix_text;
  if (!o.file.empty()) return read_file(o.file);
  return read_all(in);
}

std::vector<Int> parse_list(const std::string& s) {
  std::vector<Int> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    auto dash = tok.find('-', 1);
    try {
      if (dash != std::string::npos) {
        Int lo = std::stoll(tok.substr(0, dash)), hi = std::stoll(tok.substr(dash + 1));
        if (hi < lo || hi - lo > 100000) throw ParseError("bad range '" + tok + "'");
        for (Int x = lo; x <= hi; ++x) out.push_back(x);
      } else {
        out.push_back(std::stoll(tok));
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad list entry '" + tok + "'");
    }
  }
  return out;
}

json bounds_to_json(const ChiBounds& b) {
  json j{{"lower", b.lower}, {"lower_radius", b.lower_radius}, {"lower_evidence", b.lower_evidence}};
  j["upper"] = b.upper ? json(*b.upper) : json(nullptr);
  j["upper_evidence"] = b.upper_evidence;
  j["upper_extra_columns"] = b.upper_extra_columns;
  j["upper_quotient_order"] = b.upper_quotient_order;
  return j;
}

ChiBoundsOptions bounds_options(const Options& o, std::size_t rows) {
  ChiBoundsOptions b;
  b.radius = o.radius;
  if (!o.moduli.empty()) b.moduli = parse_list(o.moduli);
  for (const auto& e : o.extra) {
    IntVec c = parse_list(e);
    if (c.size() != rows) throw ParseError("extra column has the wrong length");
    b.extra_columns.push_back(c);
  }
  return b;
}

bool full_rank_rows(const Matrix& m) { return rank(m) == m.rows(); }

bool minors_divisible_by_3(const Matrix& m) {
  Minors3x2 mn = minors_3x2(m);
  return mod(mn.rows12, 3) == 0 && mod(mn.rows13, 3) == 0 && mod(mn.rows23, 3) == 0;
}

// Cross-checks against consequences that hold independently of the fired
// rule; throws CrossCheckFailure.
void cross_check(const Classification& c) {
  const ReducedForm& r = c.reduced;
  if (c.verdict.status != Status::Chromatic) return;
  if (r.shape_class == ShapeClass::Lower2x2 && det3_shortcut(r.matrix) && c.verdict.chi > 3)
    throw CrossCheckFailure("det3 shortcut contradicts " + c.verdict.describe());
  if (r.shape_class == ShapeClass::Mhnf3x2 && minors_divisible_by_3(r.matrix) && c.verdict.chi > 3)
    throw CrossCheckFailure("minors divisible by 3 contradict " + c.verdict.describe());
  if (c.verdict.chi < 2 || c.verdict.chi > 5) throw CrossCheckFailure("verdict out of range: " + c.verdict.describe());
}

int cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
  Matrix m = parse_matrix_input(input_text(o, in));
  Classification c = classify_detailed(m);
  json j = verdict_to_json(c.verdict);
  j["matrix"] = matrix_to_json(m);
  j["shape_class"] = to_string(c.reduced.shape_class);
  j["normal_form"] = matrix_to_json(c.reduced.matrix);
  j["transcript"] = to_json(c.reduced.transcript);
  j["deleted_zero_rows"] = c.reduced.deleted_zero_rows;
  cross_check(c);
  if (c.reduced.shape_class == ShapeClass::Mhnf3x2 && c.verdict.status == Status::Chromatic) {
    Verdict alt = chi_3x2_minors(c.reduced.matrix);
    j["minors_recast"] = verdict_to_json(alt);
    j["minors_recast"]["agrees"] = alt.same_answer(c.verdict);
  }
  if (c.verdict.status == Status::Unsupported && !columns_dependent(c.reduced.matrix)) {
    try {
      j["oracle_bounds"] = bounds_to_json(chi_bounds_infinite(c.reduced.matrix, ChiBoundsOptions{}));
    } catch (const CapExceeded& e) {
      j["oracle_bounds"] = json{{"error", e.what()}};
    }
  }
  if (o.certificate && c.verdict.status != Status::Unsupported) {
    Certificate cert = build_certificate(m, c.verdict);
    VerifyResult vr = verify_certificate(m, cert);
    if (!vr.valid) throw CrossCheckFailure("certificate failed verification: " + vr.reason);
    j["certificate"] = to_json(cert);
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_normalize(const Options& o, std::istream& in, std::ostream& out) {
  Matrix m = parse_matrix_input(input_text(o, in));
  ReducedForm r = reduce(m);
  json j{{"matrix", matrix_to_json(r.matrix)},
         {"shape_class", to_string(r.shape_class)},
         {"transcript", to_json(r.transcript)},
         {"deleted_zero_rows", r.deleted_zero_rows}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  out << j.dump(2) << '\n';
  return kOk;
}

void write_export(const std::string& path, const FiniteGraph& g) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << to_edge_list(g);
}

int cmd_oracle(const Options& o, std::istream& in, std::ostream& out) {
  Matrix m = parse_matrix_input(input_text(o, in));
  json j{{"matrix", matrix_to_json(m)}};
  if (full_rank_rows(m)) {
    FiniteGraph g = finite_quotient_graph(m);
    j["order"] = g.order;
    j["has_loops"] = g.has_loops;
    j["exact_chi"] = g.has_loops ? json(nullptr) : json(exact_chi(g));
    j["evidence"] = "exhaustive search on the finite quotient";
    if (!o.export_path.empty()) write_export(o.export_path, g);
  } else {
    if (o.exact) j["note"] = "quotient is infinite; reporting bounds";
    Matrix target = m;
    if (columns_dependent(m)) {
      target = reduce(m).matrix;
      j["bounds_matrix"] = matrix_to_json(target);
    }
    Lattice lat(target);
    bool loops = false;
    for (std::size_t i = 0; i < target.rows(); ++i) {
      IntVec e(target.rows(), 0);
      e[i] = 1;
      loops = loops || lat.contains(e);
    }
    j["has_loops"] = loops;
    if (!loops) j["bounds"] = bounds_to_json(chi_bounds_infinite(target, bounds_options(o, target.rows())));
    if (!o.export_path.empty()) write_export(o.export_path, bfs_ball(m, {o.radius, {}}));
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_export(const Options& o, std::istream& in, std::ostream& out) {
  Matrix m = parse_matrix_input(input_text(o, in));
  FiniteGraph g = full_rank_rows(m) ? finite_quotient_graph(m) : bfs_ball(m, {o.radius, {}});
  if (o.export_path.empty())
    out << to_edge_list(g);
  else
    write_export(o.export_path, g);
  return kOk;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = o.file.empty() ? read_all(in) : read_file(o.file);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("verify expects JSON: ") + e.what());
  }
  const json& cj = doc.contains("certificate") ? doc.at("certificate") : doc;
  Certificate cert = certificate_from_json(cj);
  Matrix m = o.matrix_text.empty() ? cert.matrix : parse_matrix_input(o.matrix_text);
  VerifyResult r = verify_certificate(m, cert);
  out << json{{"valid", r.valid}, {"reason", r.reason}}.dump() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepItem {
  std::function<json()> run;
};

unsigned worker_count(const Options& o) {
  if (o.workers > 0) return o.workers;
  if (const char* env = std::getenv("CAYLEYCHI_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  return 1;
}

// Runs items on a pool and prints results in input order.
bool run_items(const std::vector<SweepItem>& items, unsigned workers, std::ostream& out) {
  constexpr std::size_t kBlock = 512;
  bool all_agree = true;
  std::vector<json> results;
  for (std::size_t base = 0; base < items.size(); base += kBlock) {
    const std::size_t end = std::min(items.size(), base + kBlock);
    results.assign(end - base, json());
    std::atomic<std::size_t> next{base};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < end;) {
        try {
          results[i - base] = items[i].run();
        } catch (const std::exception& e) {
          results[i - base] = json{{"error", e.what()}, {"agree", false}};
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& r : results) {
      all_agree = all_agree && r.value("agree", false);
      out << r.dump() << '\n';
    }
  }
  return all_agree;
}

std::vector<SweepItem> circulant_items(const Options& o) {
  std::vector<SweepItem> items;
  for (Int an = 2; an <= o.max_n; ++an)
    for (Int n : {an, -an})
      for (Int a = 1; a < an; ++a)
        for (Int b = 1; b < an; ++b) {
          CirculantSpec c{n, a, b};
          if (!c.valid()) continue;
          items.push_back({[c] {
            int th = circulant_chi(c);
            int gt = exact_chi(circulant_graph(c));
            return json{{"circulant", {{"n", c.n}, {"a", c.a}, {"b", c.b}}},
                        {"classifier", th},
                        {"oracle", gt},
                        {"agree", th == gt}};
          }});
        }
  return items;
}

std::vector<SweepItem> lower2x2_items(const Options& o) {
  std::vector<SweepItem> items;
  for (Int y11 = 0; y11 <= o.bound; ++y11)
    for (Int y22 = 0; y22 <= o.bound; ++y22)
      for (Int y21 = -o.bound; y21 <= o.bound; ++y21) {
        Matrix m{{y11, 0}, {y21, y22}};
        items.push_back({[m, o] {
          Verdict v = chi_2x2(m);
          json j{{"matrix", matrix_to_json(m)}, {"classifier", verdict_to_json(v)}};
          bool agree = false;
          bool loops = false;
          Lattice lat(m);
          for (std::size_t i = 0; i < 2; ++i) {
            IntVec e{0, 0};
            e[i] = 1;
            loops = loops || lat.contains(e);
          }
          if (loops) {
            j["oracle"] = "Loops";
            agree = v.status == Status::Loops;
          } else if (determinant(m) != 0) {
            int gt = exact_chi(finite_quotient_graph(m));
            j["oracle"] = gt;
            agree = v.status == Status::Chromatic && v.chi == gt;
          } else if (m.is_zero_row(0) || m.is_zero_row(1)) {
            Verdict r = classify(m);
            j["oracle"] = verdict_to_json(r);
            agree = r.same_answer(v);
          } else {
            // Odd cycles here have length up to |y11| + |y21|.
            const std::size_t max_r = std::max<std::size_t>(o.radius, static_cast<std::size_t>(o.bound) + 1);
            ChiBounds b;
            for (std::size_t r = o.radius; r <= max_r; ++r) {
              ChiBoundsOptions bo;
              bo.radius = r;
              b = chi_bounds_infinite(Matrix{{m(0, 0)}, {m(1, 0)}}, bo);
              if (b.collapsed()) break;
            }
            j["oracle"] = bounds_to_json(b);
            agree = b.collapsed() && v.status == Status::Chromatic && v.chi == b.lower;
          }
          j["agree"] = agree;
          return j;
        }});
      }
  return items;
}

std::vector<SweepItem> random3x2_items(const Options& o) {
  std::vector<SweepItem> items;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<Int> dist(-6, 6);
  while (items.size() < o.count) {
    Matrix m(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = dist(rng);
    if (m.is_zero_row(0) || m.is_zero_row(1) || m.is_zero_row(2) || columns_dependent(m)) continue;
    items.push_back({[m, o] {
      Normalized h = mhnf_3x2(m);
      Verdict v = chi_3x2_mhnf(h.matrix);
      json j{{"matrix", matrix_to_json(m)}, {"classifier", verdict_to_json(v)}};
      if (v.status == Status::Loops) {
        j["agree"] = true;
        return j;
      }
      Verdict alt = chi_3x2_minors(m);
      j["minors_recast"] = verdict_to_json(alt);
      ChiBoundsOptions bo;
      bo.radius = o.radius;
      ChiBounds b = chi_bounds_infinite(m, bo);
      j["oracle"] = bounds_to_json(b);
      bool agree = b.lower <= v.chi && (!b.upper || v.chi <= *b.upper);
      if (b.collapsed()) agree = agree && v.chi == b.lower;
      j["agree"] = agree;
      return j;
    }});
  }
  return items;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  std::vector<SweepItem> items;
  if (o.family == "circulant")
    items = circulant_items(o);
  else if (o.family == "lower2x2")
    items = lower2x2_items(o);
  else if (o.family == "random3x2")
    items = random3x2_items(o);
  else
    throw ParseError("unknown sweep family '" + o.family + "'");
  return run_items(items, worker_count(o), out) ? kOk : kCrossCheckFailed;
}

void add_matrix_options(CLI::App* sub, Options& o) {
  sub->add_option("-m,--matrix", o.matrix_text, "Matrix, e.g. \"1 0; -1 2; -4 5\"");
  sub->add_option("-f,--file", o.file, "Read the input from a file instead of stdin");
}

}  // namespace

json verdict_to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"rule", v.rule}};
  if (v.status == Status::Chromatic) j["chi"] = v.chi;
  if (v.circulant) j["circulant"] = {{"n", v.circulant->n}, {"a", v.circulant->a}, {"b", v.circulant->b}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Matrix parse_matrix_input(const std::string& text) {
  if (!looks_like_json(text)) return parse_matrix(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("matrix")) throw ParseError("JSON input needs a 'matrix' field");
    return matrix_from_json(j.at("matrix"));
  }
  return matrix_from_json(j);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Chromatic numbers of abelian Cayley graphs given by Heuberger matrices", "cayleychi"};
  app.require_subcommand(1);

  auto* classify_cmd = app.add_subcommand("classify", "Closed-form chromatic number with provenance");
  add_matrix_options(classify_cmd, o);
  classify_cmd->add_flag("--certificate", o.certificate, "Attach a verified certificate");

  auto* normalize_cmd = app.add_subcommand("normalize", "Reduced matrix and operation transcript");
  add_matrix_options(normalize_cmd, o);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force chromatic number or bounds");
  add_matrix_options(oracle_cmd, o);
  oracle_cmd->add_flag("--exact", o.exact, "Exact chromatic number of the finite quotient");
  oracle_cmd->add_option("--radius", o.radius, "Ball radius for lower bounds");
  oracle_cmd->add_option("--moduli", o.moduli, "Quotient moduli, e.g. 6-24 or 9,12,15");
  oracle_cmd->add_option("--extra", o.extra, "Extra quotient column, e.g. \"0,0,9\"");
  oracle_cmd->add_option("--export", o.export_path, "Write the graph as an edge list");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate (JSON on stdin or --file)");
  verify_cmd->add_option("-f,--file", o.file, "Certificate or classify output");
  verify_cmd->add_option("-m,--matrix", o.matrix_text, "Verify against this matrix instead");

  auto* sweep_cmd = app.add_subcommand("sweep", "Classifier against oracle, JSON lines");
  sweep_cmd->add_option("--family", o.family, "circulant | lower2x2 | random3x2");
  sweep_cmd->add_option("--max-n", o.max_n, "Largest |n| for circulants");
  sweep_cmd->add_option("--bound", o.bound, "Entry bound for lower2x2");
  sweep_cmd->add_option("--count", o.count, "Sample size for random3x2");
  sweep_cmd->add_option("--seed", o.seed, "Seed for random3x2");
  sweep_cmd->add_option("--radius", o.radius, "Ball radius for bounds");
  sweep_cmd->add_option("--workers", o.workers, "Worker threads");

  auto* export_cmd = app.add_subcommand("export", "Edge list of the quotient or a ball");
  add_matrix_options(export_cmd, o);
  export_cmd->add_option("--radius", o.radius, "Ball radius for infinite graphs");
  export_cmd->add_option("--export", o.export_path, "Output path (default stdout)");

  std::vector<const char*> argv{"cayleychi"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(o, in, out);
    if (normalize_cmd->parsed()) return cmd_normalize(o, in, out);
    if (oracle_cmd->parsed()) return cmd_oracle(o, in, out);
    if (verify_cmd->parsed()) return cmd_verify(o, in, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (export_cmd->parsed()) return cmd_export(o, in, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const ShapeError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kCrossCheckFailed;
  }
  return kParseError;
}

}  // namespace cayleychi::cli
