// specconv: membership, support values, property suites, example reproductions and
// relaxation emission for spectral sets. Prints JSON on stdout, diagnostics on stderr.
//
// Exit codes: 0 success, 1 failed check or validation, 2 bad input, 3 infeasible C,
// 4 unsupported combination or resource limit.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "specconv/errors.hpp"
#include "specconv/harness.hpp"
#include "specconv/hull.hpp"
#include "specconv/json_io.hpp"
#include "specconv/relax.hpp"

using namespace specconv;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kInfeasible = 3, kUnsupported = 4 };

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_report(const SuiteReport& r) {
  print(to_json(r));
  std::cerr << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << ", " << r.checks << " checks, "
            << r.failure_count << " failures, " << r.skipped << " skipped, max residual " << r.max_residual << ", "
            << r.elapsed.count() << " s\n";
}

struct Options {
  std::string system, set_file, point_file, direction_file, suite, example, input, out;
  bool closed = false, via_convC = false, validate = false;
  std::size_t trials = 100, samples = 200;
  std::uint64_t seed = 1;
};

int cmd_member(const Options& o) {
  const SpectralSystem sys = SpectralSystem::parse(o.system);
  const SetSpec set = set_from_json(read_json_file(o.set_file));
  const PointV x = point_from_json(sys, read_json_file(o.point_file));
  if (o.closed && o.via_convC) throw InputError("--closed and --via-convC are exclusive");
  const MembershipCertificate cert = o.closed      ? member_clconv(sys, set, x)
                                     : o.via_convC ? member_via_convC(sys, set, x)
                                                   : member_conv_hull(sys, set, x);
  print(to_json(sys, cert));
  return kOk;
}

int cmd_sup(const Options& o) {
  const SpectralSystem sys = SpectralSystem::parse(o.system);
  const SetSpec set = set_from_json(read_json_file(o.set_file));
  const PointV c = point_from_json(sys, read_json_file(o.direction_file));
  print(to_json(spectral_sup(sys, c, set)));
  return kOk;
}

int cmd_check(const Options& o) {
  std::optional<SpectralSystem> only;
  if (!o.system.empty()) only = SpectralSystem::parse(o.system);
  const SuiteReport r = run_suite(o.suite, o.trials, o.seed, only);
  print_report(r);
  return r.passed() ? kOk : kFailed;
}

int cmd_reproduce(const Options& o) {
  const SuiteReport r = reproduce(o.example, o.seed);
  print_report(r);
  return r.passed() ? kOk : kFailed;
}

int cmd_relax(const Options& o) {
  const ProblemSpec p = problem_from_json(read_json_file(o.input));
  const RelaxationSpec r = emit_relaxation(p);
  const Json doc = to_json(r);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << doc.dump(2) << "\n";
  }
  if (!o.validate) {
    if (o.out.empty()) print(doc);
    else print({{"written", o.out}});
    return kOk;
  }
  // Validate what a consumer would read back, not the in-memory spec.
  const RelaxationSpec back = relaxation_from_json(parse_json(doc.dump(), "relaxation"));
  const ValidationReport v = validate_relaxation(back, o.samples, o.seed);
  Json out{{"validation", to_json(p.system, v)}};
  if (o.out.empty()) out["relaxation"] = doc;
  else out["written"] = o.out;
  print(out);
  std::cerr << "relax: " << v.checked << " samples checked, " << v.disagreements << " disagreements\n";
  return v.disagreements == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hulls of spectral sets: membership, support values, checks and relaxations"};
  app.require_subcommand(1);
  Options o;

  auto* member = app.add_subcommand("member", "Decide x in conv lambda^-1(C) and print a certificate");
  member->add_option("--system", o.system, "reorder:N, abs:N, absreorder:N, symeig:N or singval:MxN")->required();
  member->add_option("--set", o.set_file, "SetSpec JSON file")->required();
  member->add_option("--point", o.point_file, "point JSON file")->required();
  member->add_flag("--closed", o.closed, "closed convex hull");
  member->add_flag("--via-convC", o.via_convC, "use (conv C) cap K in place of conv(C cap K)");

  auto* sup = app.add_subcommand("sup", "Supremum of <c, x> over lambda^-1(C)");
  sup->add_option("--system", o.system, "system name")->required();
  sup->add_option("--set", o.set_file, "SetSpec JSON file")->required();
  sup->add_option("--direction", o.direction_file, "direction JSON file")->required();

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("--suite", o.suite, "suite name")->required();
  check->add_option("--trials", o.trials, "trials per system family");
  check->add_option("--seed", o.seed, "base seed");
  check->add_option("--system", o.system, "restrict to one system");

  auto* repro = app.add_subcommand("reproduce", "Reproduce a worked example");
  repro->add_option("id", o.example, "two_pt, conv_order, cl_nec or sparse_ellipsoid")->required();
  repro->add_option("--seed", o.seed, "seed");

  auto* relax = app.add_subcommand("relax", "Emit the convexified problem");
  relax->add_option("--input", o.input, "ProblemSpec JSON file")->required();
  relax->add_option("--out", o.out, "write the relaxation here instead of stdout");
  relax->add_flag("--validate", o.validate, "check the emitted rows against member_conv_hull");
  relax->add_option("--samples", o.samples, "validation samples");
  relax->add_option("--seed", o.seed, "validation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*member) return cmd_member(o);
    if (*sup) return cmd_sup(o);
    if (*check) return cmd_check(o);
    if (*repro) return cmd_reproduce(o);
    return cmd_relax(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InfeasibleSetError& e) {
    std::cerr << "infeasible set: " << e.what() << "\n";
    return kInfeasible;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUnsupported;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
