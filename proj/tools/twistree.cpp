// Command line surface: exact counting, exhaustive enumeration, the bijection
// in both directions, uniform random sampling and the generating-function
// verification suite. Exit codes: 0 ok, 2 usage, 3 resource cap, 4 input
// validation, 5 verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "twistree/bijection.hpp"
#include "twistree/counting.hpp"
#include "twistree/document.hpp"
#include "twistree/enumeration.hpp"
#include "twistree/errors.hpp"
#include "twistree/sampling.hpp"
#include "twistree/series.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitValidation = 4;
constexpr int kExitVerification = 5;

int default_cap() {
  if (const char* env = std::getenv("TWISTREE_CAP")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return twistree::kDefaultEnumerationCap;
}

void print_count_rows(const twistree::CountTable& table, int n) {
  if (n == 1) {
    std::cout << "1\t0\t" << table.at(1, 0) << "\n";
  } else {
    for (int m = n - 1; m <= 2 * n - 3; ++m)
      std::cout << n << "\t" << m << "\t" << table.at(n, m) << "\n";
  }
  std::cout << "sum\t" << table.row_sum(n) << "\n";
}

int run_count(int n, bool full) {
  twistree::CountTable table(n);
  if (full) {
    for (int k = 1; k <= n; ++k) print_count_rows(table, k);
  } else {
    print_count_rows(table, n);
  }
  return 0;
}

int run_enumerate(const std::string& family, int n, const std::string& format, int cap) {
  if (n > cap) {
    std::cerr << "enumeration size " << n << " exceeds cap " << cap
              << " (raise with --cap or TWISTREE_CAP)\n";
    return kExitResource;
  }
  auto emit = [&](const twistree::TreeDocument& doc) {
    if (format == "dot")
      std::cout << twistree::export_dot(doc);
    else
      std::cout << twistree::serialize(doc) << "\n";
  };
  if (family == "cayley") {
    twistree::enumerate_cayley(
        n, [&](const twistree::CayleyTree& t) { emit(twistree::make_document(t)); }, cap);
  } else {
    twistree::enumerate_inc12(
        n, [&](const twistree::IncTreeSeq& s) { emit(twistree::make_document(s)); }, cap);
  }
  return 0;
}

int run_map(const std::string& direction, const std::string& in_path, const std::string& out_path,
            bool express) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << "\n";
    return kExitValidation;
  }
  std::string line;
  while (std::getline(in, line) && line.empty()) {
  }
  twistree::TreeDocument doc;
  try {
    doc = twistree::parse_document(line);
  } catch (const twistree::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }

  twistree::TreeDocument out_doc;
  std::string stat_name;
  int stat_value = 0;
  if (direction == "forward") {
    if (doc.family != twistree::TreeDocument::Family::Inc12) {
      std::cerr << "forward direction expects an inc12 document\n";
      return kExitValidation;
    }
    twistree::IncTreeSeq seq = twistree::to_inc12(doc);
    twistree::Inc12Report report = twistree::validate_inc12(seq);
    if (!report.ok) {
      std::cerr << "invalid inc12 input (vertex " << report.vertex << "): " << report.detail
                << "\n";
      return kExitValidation;
    }
    twistree::CayleyTree image = express ? twistree::tau_express(seq) : twistree::tau(seq);
    out_doc = twistree::make_document(image);
    stat_name = "twists";
    stat_value = image.count_twists();
  } else {
    if (doc.family != twistree::TreeDocument::Family::Cayley) {
      std::cerr << "inverse direction expects a cayley document\n";
      return kExitValidation;
    }
    twistree::CayleyTree t = twistree::to_cayley(doc);
    twistree::CayleyReport report = twistree::validate_cayley(t);
    if (!report.ok) {
      std::cerr << "invalid cayley input (vertex " << report.vertex << "): " << report.detail
                << "\n";
      return kExitValidation;
    }
    twistree::IncTreeSeq seq = twistree::tau_inverse(t);
    out_doc = twistree::make_document(seq);
    stat_name = "triangles";
    stat_value = twistree::inc12_triangle_count(seq);
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return kExitValidation;
  }
  out << twistree::serialize(out_doc) << "\n";
  std::cout << stat_name << "\t" << stat_value << "\n";
  return 0;
}

std::unique_ptr<twistree::Rng> make_rng(const std::string& script_path, std::uint64_t seed,
                                        std::uint64_t stream) {
  if (script_path.empty()) return std::make_unique<twistree::Mt19937Rng>(seed, stream);
  std::ifstream in(script_path);
  if (!in) throw twistree::ParseError("cannot open script file " + script_path);
  std::vector<int> values;
  int v;
  while (in >> v) values.push_back(v);
  return std::make_unique<twistree::ScriptedRng>(std::move(values));
}

int run_sample(const std::string& family, int n, int count, std::uint64_t seed,
               const std::string& format, bool stats, const std::string& script, int workers) {
  std::vector<std::unique_ptr<twistree::Rng>> streams;
  if (script.empty()) {
    for (int w = 0; w < workers; ++w) streams.push_back(make_rng("", seed, w));
  } else {
    workers = 1;
    streams.push_back(make_rng(script, seed, 0));
  }

  std::uint64_t total_draws = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    twistree::Rng& rng = *streams[i % workers];
    twistree::TreeDocument doc;
    twistree::SampleStats s;
    if (family == "cayley") {
      auto [tree, st] = twistree::sample_cayley(n, rng);
      doc = twistree::make_document(tree);
      s = st;
    } else {
      auto [seq, st] = twistree::sample_inc12(n, rng);
      doc = twistree::make_document(seq);
      s = st;
    }
    total_draws += s.draws;
    if (format == "dot")
      std::cout << twistree::export_dot(doc);
    else
      std::cout << twistree::serialize(doc) << "\n";
  }
  if (stats) {
    auto elapsed =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0);
    // stderr so that stdout stays byte-identical across runs
    std::cerr << "{\"n\":" << n << ",\"draws\":" << total_draws
              << ",\"elapsed_ns\":" << elapsed.count() << "}\n";
  }
  return 0;
}

int run_stats(const std::string& family, int n, int count, std::uint64_t seed) {
  twistree::Mt19937Rng rng(seed, 0);
  int classes = std::max(1, n - 1);  // statistic ranges over 0..n-2
  std::vector<std::int64_t> observed(classes, 0);
  for (int i = 0; i < count; ++i) {
    int k;
    if (family == "cayley") {
      auto [tree, st] = twistree::sample_cayley(n, rng);
      k = tree.count_twists();
    } else {
      auto [seq, st] = twistree::sample_inc12(n, rng);
      k = twistree::inc12_triangle_count(seq);
    }
    ++observed[k];
  }
  twistree::CountTable table(n);
  mpz_class total = twistree::cayley_number(n);
  std::vector<double> expected(classes, 0.0);
  for (int k = 0; k < classes; ++k) {
    twistree::Rat p(table.at(n, k + n - 1), total);
    p.canonicalize();
    expected[k] = static_cast<double>(count) * p.get_d();
  }
  std::cout.setf(std::ios::fixed);
  std::cout.precision(6);
  for (int k = 0; k < classes; ++k)
    std::cout << k << "\t" << observed[k] << "\t" << expected[k] << "\n";
  std::cout << "chi2\t" << twistree::chi_square(observed, expected) << "\n";
  return 0;
}

int run_verify(bool pde, bool closed_form, bool lambert, int order) {
  if (pde) {
    twistree::CountTable table(order);
    twistree::BiSeries c = twistree::egf_from_counts(table, order);
    twistree::PdeReport report = twistree::pde_check(c);
    if (!report.ok) {
      auto& t = *report.offender;
      std::cout << "FAIL pde order=" << order << " first offender z^" << t.i << " u^" << t.j
                << " = " << t.v.get_str() << "\n";
      return kExitVerification;
    }
    std::cout << "PASS pde order=" << order << "\n";
    return 0;
  }
  if (closed_form) {
    twistree::ClosedFormReport report = twistree::closed_form_check(order);
    if (!report.ok) {
      std::cout << "FAIL closed-form order=" << order << " " << report.detail << "\n";
      return kExitVerification;
    }
    std::cout << "PASS closed-form order=" << order << "\n";
    return 0;
  }
  if (lambert) {
    twistree::Series w = twistree::lambert_w_series(order);
    for (int k = 1; k <= order; ++k) std::cout << k << "\t" << w[k].get_str() << "\n";
    twistree::Series residual =
        w.mul(twistree::exp_of(w)).sub(twistree::Series::x(order));
    if (!residual.is_zero()) {
      std::cout << "FAIL lambert order=" << order << "\n";
      return kExitVerification;
    }
    std::cout << "PASS lambert order=" << order << "\n";
    return 0;
  }
  std::cerr << "choose one of --pde, --closed-form, --lambert\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"increasing 1,2-trees <-> Cayley trees: counting, enumeration, bijection, sampling"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "exact counts c(n,m) and the row sum");
  int count_n = 1;
  bool count_full = false;
  count->add_option("--n", count_n, "size")->required()->check(CLI::Range(1, 100000));
  count->add_flag("--full", count_full, "emit all sizes up to n");

  auto* enumerate = app.add_subcommand("enumerate", "stream every object of a given size");
  std::string enum_family = "cayley", enum_format = "jsonl";
  int enum_n = 1, enum_cap = default_cap();
  enumerate->add_option("--family", enum_family, "cayley or inc12")
      ->required()
      ->check(CLI::IsMember({"cayley", "inc12"}));
  enumerate->add_option("--n", enum_n, "size")->required()->check(CLI::Range(1, 64));
  enumerate->add_option("--format", enum_format)->check(CLI::IsMember({"jsonl", "dot"}));
  enumerate->add_option("--cap", enum_cap, "enumeration size cap");

  auto* map = app.add_subcommand("map", "apply the bijection to a document");
  std::string map_dir, map_in, map_out;
  bool map_express = false;
  map->add_option("--direction", map_dir)->required()->check(CLI::IsMember({"forward", "inverse"}));
  map->add_option("--in", map_in, "input JSONL file")->required();
  map->add_option("--out", map_out, "output JSONL file")->required();
  map->add_flag("--express", map_express, "use the single-pass transformation (forward only)");

  auto* sample = app.add_subcommand("sample", "uniform random objects");
  std::string sample_family = "cayley", sample_format = "jsonl", sample_script;
  int sample_n = 1, sample_count = 1, sample_workers = 1;
  std::uint64_t sample_seed = 0;
  bool sample_stats = false;
  sample->add_option("--family", sample_family)
      ->required()
      ->check(CLI::IsMember({"cayley", "inc12"}));
  sample->add_option("--n", sample_n)->required()->check(CLI::Range(1, 100000000));
  sample->add_option("--count", sample_count)->required()->check(CLI::Range(1, 1000000000));
  sample->add_option("--seed", sample_seed)->required();
  sample->add_option("--format", sample_format)->check(CLI::IsMember({"jsonl", "dot"}));
  sample->add_option("--script", sample_script, "file of integers driving a scripted stream");
  sample->add_option("--workers", sample_workers, "independent streams, round-robin by index")
      ->check(CLI::Range(1, 4096));
  sample->add_flag("--stats", sample_stats, "emit a draws/elapsed JSON line on stderr");

  auto* stats = app.add_subcommand("stats", "sampled statistic histogram and chi-square");
  std::string stats_family = "cayley";
  int stats_n = 1, stats_count = 1;
  std::uint64_t stats_seed = 0;
  stats->add_option("--family", stats_family)
      ->required()
      ->check(CLI::IsMember({"cayley", "inc12"}));
  stats->add_option("--n", stats_n)->required()->check(CLI::Range(1, 1000000));
  stats->add_option("--count", stats_count)->required()->check(CLI::Range(1, 1000000000));
  stats->add_option("--seed", stats_seed)->required();

  auto* verify = app.add_subcommand("verify", "generating-function identities");
  bool v_pde = false, v_closed = false, v_lambert = false;
  int v_order = 10;
  verify->add_flag("--pde", v_pde, "recurrence as a PDE residual");
  verify->add_flag("--closed-form", v_closed, "closed form expanded at u = 1+s");
  verify->add_flag("--lambert", v_lambert, "Lambert W defining identity");
  verify->add_option("--order", v_order, "truncation order")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (count->parsed()) return run_count(count_n, count_full);
    if (enumerate->parsed()) return run_enumerate(enum_family, enum_n, enum_format, enum_cap);
    if (map->parsed()) {
      if (map_express && map_dir != "forward") {
        std::cerr << "--express applies to the forward direction only\n";
        return kExitUsage;
      }
      return run_map(map_dir, map_in, map_out, map_express);
    }
    if (sample->parsed())
      return run_sample(sample_family, sample_n, sample_count, sample_seed, sample_format,
                        sample_stats, sample_script, sample_workers);
    if (stats->parsed()) return run_stats(stats_family, stats_n, stats_count, stats_seed);
    if (verify->parsed()) return run_verify(v_pde, v_closed, v_lambert, v_order);
  } catch (const twistree::ResourceBound& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const twistree::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
