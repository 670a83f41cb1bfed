// coocsr: convert Matrix Market coordinate files to CSR documents and check
// the result against the input.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "coocsr/coocsr.hpp"

using namespace coocsr;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_error = 2;

// Dense comparisons allocate rows * cols scalars; skip them above this.
constexpr Index dense_check_limit = Index{1} << 26;

enum class CheckMode { post, trace, none };

struct ConvertArgs {
  std::string input;
  std::string output;
  CheckMode check = CheckMode::post;
  Index index_bound = default_index_bound;
  std::string format = "binary64";
};

bool dense_ok(Index rows, Index cols) { return rows == 0 || cols <= dense_check_limit / rows; }

int report(const char* what, const Verdict& v) {
  if (v) return exit_ok;
  std::cerr << what << ": " << v.to_string() << "\n";
  return exit_check_failed;
}

template <Scalar T>
int run_convert(const ConvertArgs& a) {
  const auto coo = parse_mtx<T>(read_file(a.input));
  const ConvertOptions opts{a.index_bound};
  CheckOptions check_opts;
  check_opts.index_bound = a.index_bound;

  CsrMatrix<T> csr;
  if (a.check == CheckMode::trace) {
    auto res = convert_with_trace(coo, opts);
    if (int rc = report("trace check", check_trace(coo, res.trace, check_opts))) return rc;
    csr = std::move(res.csr);
  } else {
    csr = coo_to_csr(coo, opts);
    if (a.check == CheckMode::post) {
      if (int rc = report("well-formedness", csr_wellformed_report(csr, a.index_bound))) return rc;
      if (int rc = report("coo_csr", check_coo_csr(sort_entries(coo), csr, check_opts))) return rc;
      if (dense_ok(coo.rows, coo.cols))
        if (int rc = report("coo_to_matrix", check_coo_to_matrix(coo, csr_to_dense(csr), check_opts))) return rc;
    }
  }
  write_file(a.output, write_csr_document(csr));
  return exit_ok;
}

template <Scalar T>
int run_check(const std::string& coo_path, const std::string& csr_path, std::size_t sum_cap) {
  const auto coo = parse_mtx<T>(read_file(coo_path));
  const auto csr = read_csr_document<T>(read_file(csr_path));
  CheckOptions opts;
  opts.sum_cap = sum_cap;

  Verdict v = csr_wellformed_report(csr);
  if (v) v = check_coo_csr(sort_entries(coo), csr, opts);
  bool fallback = v.deterministic_fallback;
  if (v && dense_ok(coo.rows, coo.cols)) {
    v = check_coo_to_matrix(coo, csr_to_dense(csr), opts);
    fallback = fallback || v.deterministic_fallback;
  }
  if (!v) {
    std::cout << "coo_csr: " << v.to_string() << "\n";
    return exit_check_failed;
  }
  std::cout << "coo_csr: ok" << (fallback ? " (checked-deterministic)" : "") << "\n";
  const bool reproducible = bit_equal(coo_to_csr(coo), csr);
  std::cout << "reproducible: " << (reproducible ? "yes" : "no") << "\n";
  return exit_ok;
}

template <Scalar T>
int run_spmv(const std::string& text, const std::string& vector_path) {
  const auto csr = read_csr_document<T>(text);
  if (auto v = csr_wellformed_report(csr); !v) return report("matrix", v);
  std::vector<T> x;
  std::size_t lineno = 0;
  for (const auto line : split_lines(read_file(vector_path))) {
    ++lineno;
    for (const auto& tok : split_tokens(line)) {
      const auto v = parse_scalar<T>(tok.text);
      if (!v) throw ParseError(lineno, tok.column, "bad scalar");
      x.push_back(*v);
    }
  }
  const auto y = csr_spmv(csr, x);
  for (std::size_t k = 0; k < y.size(); ++k) std::cout << (k ? " " : "") << format_scalar(y[k]);
  std::cout << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COO to CSR conversion with executable invariant checks"};
  app.require_subcommand(1);

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert a Matrix Market file to a CSR document");
  convert->add_option("--input", conv.input, "Matrix Market coordinate file")->required()->check(CLI::ExistingFile);
  convert->add_option("--output", conv.output, "CSR document to write")->required();
  convert->add_option("--check", conv.check, "Verification: post, trace or none")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CheckMode>{{"post", CheckMode::post}, {"trace", CheckMode::trace}, {"none", CheckMode::none}}));
  convert->add_option("--index-bound", conv.index_bound, "Largest admissible index")->check(CLI::PositiveNumber);
  convert->add_option("--format", conv.format, "Scalar format")->check(CLI::IsMember({"binary64", "binary32"}));

  std::string count_input;
  auto* count = app.add_subcommand("count", "Print the number of distinct coordinates");
  count->add_option("--input", count_input)->required()->check(CLI::ExistingFile);

  std::string check_coo, check_csr;
  std::size_t sum_cap = default_sum_cap;
  auto* check = app.add_subcommand("check", "Check a CSR document against a COO file");
  check->add_option("--coo", check_coo)->required()->check(CLI::ExistingFile);
  check->add_option("--csr", check_csr)->required()->check(CLI::ExistingFile);
  check->add_option("--sum-cap", sum_cap, "Longest duplicate list checked against every summation order");

  std::string spmv_matrix, spmv_vector;
  auto* spmv = app.add_subcommand("spmv", "Multiply a CSR document by a vector");
  spmv->add_option("--matrix", spmv_matrix)->required()->check(CLI::ExistingFile);
  spmv->add_option("--vector", spmv_vector, "Whitespace-separated decimals")->required()->check(CLI::ExistingFile);

  GenParams gen_params;
  gen_params.regime = ValueRegime::full;
  std::string gen_output;
  bool gen_exact = false;
  auto* gen = app.add_subcommand("gen", "Write a random COO matrix");
  gen->add_option("--seed", gen_params.seed)->required();
  gen->add_option("--rows", gen_params.rows)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--cols", gen_params.cols)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--nnz", gen_params.nnz)->required();
  gen->add_option("--dup-prob", gen_params.dup_prob)->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--max-multiplicity", gen_params.max_multiplicity, "0 means unlimited");
  gen->add_flag("--exact-ints", gen_exact, "Small integers, so duplicate sums never round");
  gen->add_option("--output", gen_output)->required();

  std::size_t fuzz_cases = 1000;
  std::uint64_t fuzz_seed = 0;
  bool fuzz_exact = false;
  std::string repro = "fuzz-repro.mtx";
  detail::Fault fault = detail::Fault::none;
  CaseShape shape;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Convert random matrices and check every step");
  fuzz_cmd->add_option("--cases", fuzz_cases)->required();
  fuzz_cmd->add_option("--seed", fuzz_seed)->required();
  fuzz_cmd->add_flag("--exact-ints", fuzz_exact, "Compare bitwise against the dense oracle");
  fuzz_cmd->add_option("--max-rows", shape.max_rows)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-cols", shape.max_cols)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-nnz", shape.max_nnz);
  fuzz_cmd->add_option("--repro", repro, "Where to write the minimized failing input");
  fuzz_cmd->add_option("--inject-fault", fault)
      ->transform(CLI::CheckedTransformer(std::map<std::string, detail::Fault>{
          {"overwrite-duplicate", detail::Fault::overwrite_duplicate},
          {"unsigned-less-guard", detail::Fault::unsigned_less_guard}}))
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*convert) {
      return conv.format == "binary32" ? run_convert<float>(conv) : run_convert<double>(conv);
    }
    if (*count) {
      std::cout << coo_count(sort_entries(parse_mtx<double>(read_file(count_input)))) << "\n";
      return exit_ok;
    }
    if (*check) {
      const auto fmt = csr_document_format(read_file(check_csr));
      return fmt == ScalarFormat::binary32 ? run_check<float>(check_coo, check_csr, sum_cap)
                                           : run_check<double>(check_coo, check_csr, sum_cap);
    }
    if (*spmv) {
      const auto text = read_file(spmv_matrix);
      return csr_document_format(text) == ScalarFormat::binary32 ? run_spmv<float>(text, spmv_vector)
                                                                 : run_spmv<double>(text, spmv_vector);
    }
    if (*gen) {
      if (gen_exact) gen_params.regime = ValueRegime::exact_ints;
      write_file(gen_output, write_mtx(gen_random_coo<double>(gen_params)));
      return exit_ok;
    }
    if (*fuzz_cmd) {
      shape.regime = fuzz_exact ? ValueRegime::exact_ints : ValueRegime::full;
      if (!fuzz_exact) shape.max_multiplicity = 5;
      const auto rep = fuzz<double>(fuzz_cases, fuzz_seed, shape, {}, fault);
      if (!rep.failure) {
        std::cout << rep.cases_run << " cases passed\n";
        return exit_ok;
      }
      const auto& f = *rep.failure;
      std::cout << "case " << f.case_index << " (seed " << f.case_seed << ") failed: " << f.verdict.to_string()
                << "\n";
      std::cout << "minimized from " << rep.original.entries.size() << " to " << rep.minimized.entries.size()
                << " entries, written to " << repro << "\n";
      write_file(repro, write_mtx(rep.minimized));
      return exit_check_failed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_ok;
}
