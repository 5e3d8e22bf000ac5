// Copyright 2026 the cpdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cpdilate command line tool.
//
// Subcommands:
//   convert   change channel representation (kraus <-> choi)
//   dilate    build the Stinespring dilation and Kraus set, write them out
//   verify    run the full numerical certification suite on a channel
//   random    write a seeded random channel in Kraus representation
//
// Exit codes: 0 success / all checks pass, 1 verification check failure,
// 2 malformed input or a channel that fails the CP gate.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpdilate/cpdilate.hpp"
#include "cpdilate/io.hpp"

namespace {

using namespace cpdilate;

struct TolFlags {
  double cp_tol = 1e-10;
  double rank_rtol = 1e-10;
  double rank_atol = 1e-12;
};

void add_tol_flags(CLI::App* cmd, TolFlags& tf) {
  cmd->add_option("--cp-tol", tf.cp_tol,
                  "CP gate: reject if min Choi eigenvalue < -cp_tol*(1+max)");
  cmd->add_option("--rank-rtol", tf.rank_rtol,
                  "relative eigenvalue cutoff for numerical rank");
  cmd->add_option("--rank-atol", tf.rank_atol,
                  "absolute eigenvalue cutoff for numerical rank");
}

int cmd_convert(const std::string& in_path, const std::string& to,
                const std::string& out_path, const TolFlags& tf) {
  const io::ChannelData ch = io::load_channel(in_path);
  const CPMap phi = io::to_cpmap(ch, tf.cp_tol);
  if (to == "choi") {
    io::save_channel_choi(out_path, phi.choi(), phi.dim());
  } else {
    if (ch.representation == "kraus") {
      // Already a Kraus file; rewrite as-is.
      io::save_channel_kraus(out_path, ch.dim, ch.kraus);
    } else {
      const StinespringDilation dil =
          build_dilation(phi, tf.rank_rtol, tf.rank_atol);
      io::save_channel_kraus(out_path, phi.dim(), extract_kraus(dil).ops);
    }
  }
  std::printf("wrote %s (%s, dim %zu)\n", out_path.c_str(), to.c_str(),
              phi.dim());
  return 0;
}

int cmd_dilate(const std::string& in_path, const std::string& out_path,
               const TolFlags& tf) {
  const CPMap phi = io::to_cpmap(io::load_channel(in_path), tf.cp_tol);
  const StinespringDilation dil =
      build_dilation(phi, tf.rank_rtol, tf.rank_atol);
  const KrausSet kraus = extract_kraus(dil);
  io::save_dilation(out_path, dil, kraus);
  std::printf("dim: %zu\n", dil.dim);
  std::printf("ancilla_dim: %zu\n", dil.ancilla_dim);
  if (dil.ancilla_dim > 0) {
    std::printf("ancilla_eigenvalue_max: %.6e\n",
                dil.basis.eigenvalues.front());
    std::printf("ancilla_eigenvalue_min: %.6e\n",
                dil.basis.eigenvalues.back());
  }
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_verify(const std::string& in_path, std::size_t trials,
               std::uint64_t seed, double tol, const TolFlags& tf) {
  const CPMap phi = io::to_cpmap(io::load_channel(in_path), tf.cp_tol);
  const VerificationReport report =
      run_full_suite(phi, seed, trials, tol, tf.rank_rtol, tf.rank_atol);
  std::fputs(io::render_report(report).c_str(), stdout);
  for (const auto& rec : report.checks)
    std::fprintf(stderr, "timing: %-22s %.3f ms\n", rec.name.c_str(),
                 rec.millis);
  return report.overall_pass ? 0 : 1;
}

int cmd_random(std::size_t dim, std::size_t rank, std::uint64_t seed,
               bool unital, const std::string& out_path) {
  io::save_channel_kraus(out_path, dim, random_kraus(dim, rank, seed, unital));
  std::printf("wrote %s (dim %zu, rank %zu, seed %llu%s)\n", out_path.c_str(),
              dim, rank, static_cast<unsigned long long>(seed),
              unital ? ", unital" : "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stinespring dilations and Kraus decompositions of completely "
      "positive maps via kernel Gram factorizations"};
  app.require_subcommand(1);

  TolFlags tf;

  auto* convert = app.add_subcommand(
      "convert", "convert a channel file between representations");
  std::string conv_in, conv_out, conv_to;
  convert->add_option("--in", conv_in, "input channel file")->required();
  convert->add_option("--to", conv_to, "target representation")
      ->required()
      ->check(CLI::IsMember({"kraus", "choi"}));
  convert->add_option("--out", conv_out, "output channel file")->required();
  add_tol_flags(convert, tf);

  auto* dilate =
      app.add_subcommand("dilate", "construct the Stinespring dilation");
  std::string dil_in, dil_out;
  dilate->add_option("--in", dil_in, "input channel file")->required();
  dilate->add_option("--out", dil_out, "output dilation file")->required();
  add_tol_flags(dilate, tf);

  auto* verify =
      app.add_subcommand("verify", "run the numerical certification suite");
  std::string ver_in;
  std::size_t ver_trials = 100;
  std::uint64_t ver_seed = 42;
  double ver_tol = 1e-9;
  verify->add_option("--in", ver_in, "input channel file")->required();
  verify->add_option("--trials", ver_trials, "trials per randomized check");
  verify->add_option("--seed", ver_seed, "base seed for all checks");
  verify->add_option("--tol", ver_tol,
                     "base tolerance for residual checks (default 1e-9)");
  add_tol_flags(verify, tf);

  auto* random_cmd =
      app.add_subcommand("random", "write a seeded random channel");
  std::size_t rnd_dim = 0, rnd_rank = 0;
  std::uint64_t rnd_seed = 42;
  bool rnd_unital = false;
  std::string rnd_out;
  random_cmd->add_option("--dim", rnd_dim, "Hilbert space dimension")
      ->required();
  random_cmd->add_option("--rank", rnd_rank, "number of Kraus generators")
      ->required();
  random_cmd->add_option("--seed", rnd_seed, "generator seed");
  random_cmd->add_flag("--unital", rnd_unital, "normalize to phi(I) = I");
  random_cmd->add_option("--out", rnd_out, "output channel file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*convert) return cmd_convert(conv_in, conv_to, conv_out, tf);
    if (*dilate) return cmd_dilate(dil_in, dil_out, tf);
    if (*verify) return cmd_verify(ver_in, ver_trials, ver_seed, ver_tol, tf);
    if (*random_cmd)
      return cmd_random(rnd_dim, rnd_rank, rnd_seed, rnd_unital, rnd_out);
  } catch (const NotCompletelyPositive& e) {
    std::fprintf(stderr, "error: NotCompletelyPositive: %s (min eigenvalue %.12e)\n",
                 e.what(), e.min_eigenvalue);
    return 2;
  } catch (const NotPSD& e) {
    std::fprintf(stderr, "error: NotPSD: %s (min eigenvalue %.12e)\n", e.what(),
                 e.min_eigenvalue);
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
