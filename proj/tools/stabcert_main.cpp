// stabcert: certification engine for the iterate factor structure of
// z^d + 1/c over Q. Data goes to stdout (or --out); diagnostics to stderr.
// Exit codes: 0 success / all certified, 1 unresolved or unexpected findings,
// 2 usage or configuration errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "stabcert/certify.hpp"
#include "stabcert/criteria.hpp"
#include "stabcert/report.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_unresolved = 1;
constexpr int exit_usage = 2;

unsigned default_jobs() {
  if (const char* env = std::getenv("STABCERT_JOBS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int run_certify(long long max_m, std::uint64_t prime_bound, unsigned jobs,
                const std::string& out_path, const std::string& format, bool exemplar_check) {
  using namespace stabcert;
  if (prime_bound < 7) {
    std::cerr << "certify: --prime-bound must be >= 7 (no usable sieve prime below 7)\n";
    return exit_usage;
  }
  const BatchReport report = certify_range(max_m, prime_bound, jobs, exemplar_check);
  std::string payload;
  if (format == "json")
    payload = dump_report_json(report);
  else if (format == "csv")
    payload = report_to_csv(report);
  else if (format == "text")
    payload = report_to_text(report);
  else {
    std::cerr << "certify: unknown format '" << format << "'\n";
    return exit_usage;
  }
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "certify: cannot open " << out_path << " for writing\n";
      return exit_usage;
    }
    out << payload;
  }
  std::cerr << "certified " << (2 * report.max_m - report.unresolved) << "/" << 2 * report.max_m
            << " certificates (table " << report.covered_by_table << ", searched "
            << report.searched << ", special " << report.special << ", unresolved "
            << report.unresolved << ")\n";
  bool ok = report.theorem3_verified;
  for (const ExemplarCheck& check : report.exemplar_checks) {
    std::cerr << "exemplar m=" << check.m << " " << factor_name(check.which) << " prime "
              << check.prime << ": " << (check.pass ? "PASS" : "FAIL") << "\n";
    ok = ok && check.pass;
  }
  return ok ? exit_ok : exit_unresolved;
}

int run_sieve(long long m, std::uint64_t k, const std::string& factor, bool all_indices) {
  using namespace stabcert;
  const auto which = factor_from_name(factor);
  if (!which) {
    std::cerr << "sieve: --factor must be g1 or g2\n";
    return exit_usage;
  }
  const SieveResult result =
      sieve_indices(*which, m, k, 2, all_indices ? 1 : 2);
  if (result.pass) {
    std::cout << "PASS m=" << m << " " << factor << " mod " << k << " (tail "
              << result.tail_length << ", cycle " << result.cycle_length << ", checked "
              << result.indices_checked << " indices)\n";
    return exit_ok;
  }
  std::cout << "FAIL m=" << m << " " << factor << " mod " << k << " at orbit index "
            << result.witness_index << " (residue " << result.witness_residue
            << " is a cube mod " << k << ")\n";
  return exit_unresolved;
}

int run_orbit(int d, long long c, std::uint64_t k) {
  const auto orbit = stabcert::orbit_mod_k(d, c, k);
  std::cout << "x -> x^" << d << " + " << orbit.c_inv << " (mod " << k << ")\n";
  std::cout << "tail:";
  for (auto v : orbit.tail) std::cout << ' ' << v;
  std::cout << "\ncycle:";
  for (auto v : orbit.cycle) std::cout << ' ' << v;
  std::cout << '\n';
  return exit_ok;
}

int run_classify(int d) {
  using namespace stabcert;
  const Classification c = classify_stability(d);
  std::cout << "d=" << d << ": " << stability_case_name(c.stability_case);
  switch (c.stability_case) {
    case StabilityCase::power_of_two: std::cout << " (r=" << c.r << ")"; break;
    case StabilityCase::two_three: std::cout << " (r=" << c.r << ", s=" << c.s << ")"; break;
    case StabilityCase::two_five_seven:
      std::cout << " (r=" << c.r << ", s=" << c.s << ", t=" << c.t << ")";
      break;
    default: break;
  }
  std::cout << '\n';
  if (!c.abc_note.empty()) std::cout << "note: " << c.abc_note << '\n';
  return exit_ok;
}

int run_iterate(int d, long long c, int n, bool force) {
  const auto orbit = stabcert::iterate_orbit_exact(d, stabcert::BigInt(c), n, force ? n : 0);
  for (std::size_t i = 0; i < orbit.size(); ++i)
    std::cout << "f^" << i + 1 << "(0) = " << orbit[i] << '\n';
  return exit_ok;
}

int run_quad_bound(long long c) {
  const auto bound = stabcert::quadratic_factor_bound(stabcert::BigInt(c));
  if (bound.is_infinite) {
    std::cout << "nu_2(1+c) = infinite (1 + c = 0; the orbit of 0 is preperiodic)\n";
    return exit_ok;
  }
  std::cout << "nu_2(1+c) = " << bound.value
            << " (iterates of z^2 + 1/c have at most that many irreducible factors)\n";
  if (bound.value == 1) std::cout << "bound 1: every iterate is irreducible\n";
  return exit_ok;
}

int run_scan_a2(int d_min, int d_max, long long c_max) {
  const auto hits = stabcert::scan_a2(d_min, d_max, c_max);
  bool unexpected = false;
  for (const auto& hit : hits) {
    std::cout << "a_2 hit: d=" << hit.d << " c=" << hit.c << " p=" << hit.p << '\n';
    if (!(hit.d == 4 && hit.c == 2 && hit.p == 2)) unexpected = true;
  }
  std::cout << hits.size() << " hit(s); expected only (d=4, c=2, p=2)\n";
  return unexpected ? exit_unresolved : exit_ok;
}

int run_tables(long long residual_max) {
  using namespace stabcert;
  const auto tables = builtin_tables();
  for (const SieveTable* table : {&tables.first, &tables.second}) {
    std::cout << factor_name(table->which) << " table:\n";
    for (const auto& [k, classes] : table->entries) {
      std::cout << "  k=" << k << ":";
      for (auto r : classes) std::cout << ' ' << r;
      std::cout << '\n';
    }
  }
  if (residual_max > 0) {
    for (const SieveTable* table : {&tables.first, &tables.second}) {
      const auto uncovered = residuals(residual_max, *table);
      std::cout << factor_name(table->which) << " residuals in [1, " << residual_max
                << "]: " << uncovered.size() << '\n';
      for (std::size_t i = 0; i < uncovered.size(); ++i)
        std::cout << uncovered[i] << ((i + 1) % 16 == 0 || i + 1 == uncovered.size() ? '\n' : ' ');
    }
  }
  return exit_ok;
}

int run_fermat(int p, int q, int r, long long bound) {
  const auto solutions = stabcert::fermat_brute_search(p, q, r, bound);
  if (solutions.empty()) {
    std::cout << "no primitive solutions of x^" << p << " + y^" << q << " = z^" << r
              << " with |x|,|y|,|z| <= " << bound << '\n';
  } else {
    for (const auto& s : solutions)
      std::cout << "(" << s.x << ", " << s.y << ", " << s.z << ")\n";
  }
  return exit_ok;
}

int run_abc(long long a, long long b, long long c) {
  using stabcert::BigInt;
  const auto check = stabcert::abc_inequality_check(BigInt(a), BigInt(b), BigInt(c));
  std::cout << "N = rad(abc) = " << check.n_radical << '\n';
  std::cout << "c < N^(7/4): " << (check.holds_74 ? "holds" : "FAILS") << " (exact comparison c^4 "
            << (check.holds_74 ? "<" : ">=") << " N^7)\n";
  std::cout << "quality log c / log N = " << check.quality << '\n';
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification engine for iterates of z^d + 1/c over Q"};
  app.require_subcommand(1);

  // certify
  auto* certify = app.add_subcommand("certify", "run the full factor-certification campaign");
  long long max_m = 0;
  std::uint64_t prime_bound = 150;
  unsigned jobs = default_jobs();
  std::string out_path;
  std::string format = "json";
  bool exemplar_check = false;
  certify->add_option("--max-m", max_m, "certify m in [1, max-m]")->required();
  certify->add_option("--prime-bound", prime_bound, "residual prime search bound (default 150)");
  certify->add_option("--jobs", jobs, "worker count (default: available parallelism)");
  certify->add_option("--out", out_path, "write the report to a file instead of stdout");
  certify->add_option("--format", format, "json | csv | text (default json)");
  certify->add_flag("--exemplar-check", exemplar_check,
                    "also record the reference exemplar sieves (m=4342/73, m=2730/67)");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "run the cube sieve for one m and one modulus");
  long long sieve_m = 0;
  std::uint64_t sieve_k = 0;
  std::string sieve_factor;
  bool all_indices = false;
  sieve->add_option("--m", sieve_m, "factor parameter m (c = m^3)")->required();
  sieve->add_option("--k", sieve_k, "prime modulus, k == 1 (mod 3)")->required();
  sieve->add_option("--factor", sieve_factor, "g1 | g2")->required();
  sieve->add_flag("--all-indices", all_indices, "check every orbit index n >= 2, not only even n");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "tail/cycle of the orbit of 0 mod k");
  int orbit_d = 0;
  long long orbit_c = 0;
  std::uint64_t orbit_k = 0;
  orbit->add_option("--d", orbit_d, "degree")->required();
  orbit->add_option("--c", orbit_c, "parameter c")->required();
  orbit->add_option("--mod", orbit_k, "modulus")->required();

  // classify
  auto* classify = app.add_subcommand("classify", "which stability case covers a degree");
  int classify_d = 0;
  classify->add_option("--d", classify_d, "degree")->required();

  // iterate
  auto* iterate = app.add_subcommand("iterate", "exact orbit of 0 under z^d + 1/c");
  int it_d = 0, it_n = 0;
  long long it_c = 0;
  bool it_force = false;
  iterate->add_option("--d", it_d, "degree")->required();
  iterate->add_option("--c", it_c, "parameter c")->required();
  iterate->add_option("--n", it_n, "number of iterates")->required();
  iterate->add_flag("--force", it_force, "override the growth guard");

  // quad-bound
  auto* quad = app.add_subcommand("quad-bound", "2-adic factor bound for z^2 + 1/c, odd c");
  long long quad_c = 0;
  quad->add_option("--c", quad_c, "odd parameter c")->required();

  // scan-a2
  auto* scan = app.add_subcommand("scan-a2", "perfect-power scan of a_2 = 1 + c^(d-1)");
  int scan_d_min = 2, scan_d_max = 0;
  long long scan_c_max = 0;
  scan->add_option("--d-min", scan_d_min, "smallest degree (default 2)");
  scan->add_option("--d-max", scan_d_max, "largest degree")->required();
  scan->add_option("--c-max", scan_c_max, "scan 2 <= |c| <= c-max")->required();

  // tables
  auto* tables = app.add_subcommand("tables", "dump the built-in sieve tables");
  long long residual_max = 0;
  tables->add_option("--residuals", residual_max, "also list m in [1, M] covered by no modulus");

  // fermat
  auto* fermat = app.add_subcommand("fermat", "brute search x^p + y^q = z^r for primitive solutions");
  int f_p = 0, f_q = 0, f_r = 0;
  long long f_bound = 0;
  fermat->add_option("--p", f_p)->required();
  fermat->add_option("--q", f_q)->required();
  fermat->add_option("--r", f_r)->required();
  fermat->add_option("--bound", f_bound, "box |x|,|y|,|z| <= bound")->required();

  // abc
  auto* abc = app.add_subcommand("abc", "exact 7/4 abc inequality check for a + b = c");
  long long abc_a = 0, abc_b = 0, abc_c = 0;
  abc->add_option("--a", abc_a)->required();
  abc->add_option("--b", abc_b)->required();
  abc->add_option("--c", abc_c)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help("", CLI::AppFormatMode::Normal);
    return exit_usage;
  }

  try {
    if (certify->parsed())
      return run_certify(max_m, prime_bound, jobs == 0 ? 1 : jobs, out_path, format,
                         exemplar_check);
    if (sieve->parsed()) return run_sieve(sieve_m, sieve_k, sieve_factor, all_indices);
    if (orbit->parsed()) return run_orbit(orbit_d, orbit_c, orbit_k);
    if (classify->parsed()) return run_classify(classify_d);
    if (iterate->parsed()) return run_iterate(it_d, it_c, it_n, it_force);
    if (quad->parsed()) return run_quad_bound(quad_c);
    if (scan->parsed()) return run_scan_a2(scan_d_min, scan_d_max, scan_c_max);
    if (tables->parsed()) return run_tables(residual_max);
    if (fermat->parsed()) return run_fermat(f_p, f_q, f_r, f_bound);
    if (abc->parsed()) return run_abc(abc_a, abc_b, abc_c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
