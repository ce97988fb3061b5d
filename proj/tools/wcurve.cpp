// Experiment driver: every subcommand runs a seeded, reproducible
// measurement and emits a report whose bytes depend only on the
// configuration and seed.  OMP_NUM_THREADS picks the worker count and
// never changes any reported number.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "wcurve/report.hpp"
#include "wcurve/rng.hpp"
#include "wcurve/skew.hpp"

namespace {

using namespace wcurve;
using report::Format;
using report::Report;

struct OutputOptions {
  std::string path;
  std::string format = "json";
  bool timings = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.path, "write the report to this file");
  cmd->add_option("--format", out.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timings", out.timings, "print wall-clock timings to stderr");
}

Format parse_format(const std::string& f) {
  return f == "csv" ? Format::csv : Format::json;
}

int write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  file << text;
  return 0;
}

int deliver(const Report& r, const OutputOptions& out) {
  const int rc = write_text(report::emit_report(r, parse_format(out.format)), out.path);
  if (rc != 0) return rc;
  for (const auto& v : r.verdicts) {
    std::cerr << (v.passed ? "[pass] " : "[FAIL] ") << v.name << " = " << v.observed
              << "  (" << v.criterion << ")\n";
  }
  if (out.timings) {
    for (const auto& [name, sec] : r.timings) {
      std::fprintf(stderr, "[time] %s: %.3f s\n", name.c_str(), sec);
    }
  }
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical laboratory for a plane Weierstrass-type curve driven by the Baker map"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain key=value configuration file; flags win");

  report::EvalConfig eval_cfg;
  report::RenderConfig render_cfg;
  report::VerifyConfig verify_cfg;
  report::ScalingConfig scaling_cfg;
  report::MarstrandConfig marstrand_cfg;
  report::LocalDimConfig localdim_cfg;
  report::BoxDimConfig boxdim_cfg;
  report::HolderConfig holder_cfg;
  report::SbrConfig sbr_cfg;
  OutputOptions out;
  std::string hist_out;
  std::string suite = "identities";

  auto* eval = app.add_subcommand("eval", "evaluate the curve at one parameter value");
  eval->add_option("--x", eval_cfg.x, "parameter in [0,1]")->required();
  eval->add_option("--alpha", eval_cfg.alpha, "amplitude exponent in (0,1]");
  eval->add_option("--eps", eval_cfg.eps, "series tail bound");
  add_output_flags(eval, out);

  auto* render = app.add_subcommand("render", "tabulate (x, W1, W2) rows for plotting");
  render->add_option("--n", render_cfg.n, "row count (>= 2)")->required();
  render->add_option("--alpha", render_cfg.alpha, "amplitude exponent in (0,1]");
  render->add_option("--eps", render_cfg.eps, "series tail bound");
  add_output_flags(render, out);

  auto* verify = app.add_subcommand("verify", "check the exact dynamical identities");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"identities"}));
  verify->add_option("--tol", verify_cfg.tol, "residual tolerance");
  verify->add_option("--count", verify_cfg.count, "random states per identity");
  verify->add_option("--seed", verify_cfg.seed, "rng seed")->required();
  verify->add_option("--eps", verify_cfg.eps, "series tail bound");
  add_output_flags(verify, out);

  auto* scaling = app.add_subcommand("scaling", "measure the increment-ball scaling law");
  scaling->add_option("--r0", scaling_cfg.r0, "largest radius of the gamma ladder");
  scaling->add_option("--levels", scaling_cfg.levels, "gamma steps below r0");
  scaling
      ->add_option("--rlist", scaling_cfg.r_list,
                   "explicit radii; selects the constants suite")
      ->delimiter(',');
  scaling->add_option("--n", scaling_cfg.n, "samples");
  scaling->add_option("--seed", scaling_cfg.seed, "rng seed")->required();
  scaling->add_option("--eps", scaling_cfg.eps, "series tail bound");
  add_output_flags(scaling, out);

  auto* marstrand = app.add_subcommand("marstrand", "nested projection-tail estimate");
  marstrand->add_option("--eta", marstrand_cfg.eta, "tail exponent in (0,1)");
  marstrand->add_option("--rlist", marstrand_cfg.r_list, "radii")->delimiter(',');
  marstrand->add_option("--m-outer", marstrand_cfg.m_outer, "outer samples");
  marstrand->add_option("--m-inner", marstrand_cfg.m_inner, "inner samples");
  marstrand->add_option("--chat-n", marstrand_cfg.chat_n, "samples behind C_hat");
  marstrand->add_option("--seed", marstrand_cfg.seed, "rng seed")->required();
  marstrand->add_option("--eps", marstrand_cfg.eps, "series tail bound");
  add_output_flags(marstrand, out);

  auto* localdim = app.add_subcommand("localdim", "local dimension of the graph measure");
  localdim->add_option("--points", localdim_cfg.points, "random base points");
  localdim->add_option("--n-min", localdim_cfg.level_min, "smallest dyadic level");
  localdim->add_option("--n-max", localdim_cfg.level_max, "largest dyadic level");
  localdim->add_option("--K", localdim_cfg.width, "tube width constant");
  localdim->add_option("--n", localdim_cfg.n, "samples per level");
  localdim->add_option("--seed", localdim_cfg.seed, "rng seed")->required();
  localdim->add_option("--eps", localdim_cfg.eps, "series tail bound");
  add_output_flags(localdim, out);

  auto* boxdim = app.add_subcommand("boxdim", "box-counting dimension of the graph");
  boxdim->add_option("--alpha", boxdim_cfg.alpha, "amplitude exponent in (0,1]");
  boxdim->add_option("--k-min", boxdim_cfg.level_min, "smallest grid level");
  boxdim->add_option("--k-max", boxdim_cfg.level_max, "largest grid level");
  boxdim->add_option("--oversample", boxdim_cfg.oversample, "samples per cell step");
  boxdim->add_option("--eps", boxdim_cfg.eps, "series tail bound");
  add_output_flags(boxdim, out);

  auto* holder = app.add_subcommand("holder", "Hoelder exponent from max increments");
  holder->add_option("--alpha", holder_cfg.alpha, "amplitude exponent in (0,1]");
  holder->add_option("--j-min", holder_cfg.j_min, "smallest dyadic scale exponent");
  holder->add_option("--j-max", holder_cfg.j_max, "largest dyadic scale exponent");
  holder->add_option("--n", holder_cfg.n, "samples per scale");
  holder->add_option("--seed", holder_cfg.seed, "rng seed")->required();
  holder->add_option("--eps", holder_cfg.eps, "series tail bound");
  add_output_flags(holder, out);

  auto* sbr = app.add_subcommand("sbr", "sample the physical invariant measure marginal");
  sbr->add_option("--x", sbr_cfg.xs, "fixed contracted coordinates")->delimiter(',');
  sbr->add_option("--n", sbr_cfg.n, "samples per coordinate");
  sbr->add_option("--seed", sbr_cfg.seed, "rng seed")->required();
  sbr->add_option("--eps", sbr_cfg.eps, "series tail bound");
  sbr->add_option("--hist-out", hist_out, "write the 200x200 histogram as CSV");
  add_output_flags(sbr, out);

  try {
    app.parse(argc, argv);

    if (eval->parsed()) return deliver(report::run_eval(eval_cfg), out);
    if (render->parsed()) {
      return write_text(report::render_rows(render_cfg, parse_format(out.format)),
                        out.path);
    }
    if (verify->parsed()) return deliver(report::run_verify(verify_cfg), out);
    if (scaling->parsed()) return deliver(report::run_scaling(scaling_cfg), out);
    if (marstrand->parsed()) return deliver(report::run_marstrand(marstrand_cfg), out);
    if (localdim->parsed()) return deliver(report::run_localdim(localdim_cfg), out);
    if (boxdim->parsed()) return deliver(report::run_boxdim(boxdim_cfg), out);
    if (holder->parsed()) return deliver(report::run_holder(holder_cfg), out);
    if (sbr->parsed()) {
      const auto rep = report::run_sbr(sbr_cfg);
      if (!hist_out.empty()) {
        const auto params = series::CurveParams::half();
        const auto policy = series::TruncationPolicy::for_eps(sbr_cfg.eps, params);
        std::ofstream file(hist_out, std::ios::binary);
        if (!file) {
          std::cerr << "error: cannot write " << hist_out << "\n";
          return 2;
        }
        file << "x,bin1,bin2,count\n";
        for (size_t i = 0; i < sbr_cfg.xs.size(); ++i) {
          const auto s = skew::sbr_sample(sbr_cfg.xs[i], sbr_cfg.n,
                                          rng::derive(sbr_cfg.seed, i), params, policy);
          for (int b1 = 0; b1 < s.bins_per_side; ++b1) {
            for (int b2 = 0; b2 < s.bins_per_side; ++b2) {
              const uint32_t c =
                  s.histogram[static_cast<size_t>(b1) * s.bins_per_side + b2];
              if (c > 0) file << s.x << ',' << b1 << ',' << b2 << ',' << c << '\n';
            }
          }
        }
      }
      return deliver(rep, out);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}
