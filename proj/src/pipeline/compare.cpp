#include "sdc/pipeline/compare.hpp"

#include <cstdio>
#include <fstream>

#include "sdc/core/io.hpp"

namespace sdc {

std::vector<MethodScore> compare_methods(const SequenceInput& input, const Frame& truth,
                                         const CompareOptions& options) {
  validate(input);
  require_same_shape(input.frames.back(), truth, "compare_methods");

  std::vector<MethodScore> scores;
  scores.push_back({"copy_last", evaluate_metrics(input.frames.back(), truth)});
  for (Method method : {Method::vector, Method::kernel, Method::sdc}) {
    PredictOptions p;
    p.method = method;
    p.n = method == Method::kernel ? options.kernel_n : options.sdc_n;
    p.schedule = options.schedule;
    p.fit = options.fit;
    p.flow = options.flow;
    scores.push_back({std::string(to_string(method)),
                      evaluate_metrics(predict_next(input, p), truth)});
  }
  return scores;
}

std::string format_compare_csv(const std::vector<MethodScore>& scores) {
  std::string out = "method,l1,l2,psnr,ssim\n";
  char line[200];
  for (const auto& s : scores) {
    std::snprintf(line, sizeof line, "%s,%.9g,%.9g,%.6f,%.6f\n", s.method.c_str(), s.metrics.l1,
                  s.metrics.l2, s.metrics.psnr, s.metrics.ssim);
    out += line;
  }
  return out;
}

void write_compare_csv(const std::vector<MethodScore>& scores, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_compare_csv(scores);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sdc
