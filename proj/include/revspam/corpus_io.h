#ifndef REVSPAM_CORPUS_IO_H_
#define REVSPAM_CORPUS_IO_H_

#include <filesystem>
#include <istream>
#include <vector>

#include "revspam/preprocess.h"

namespace revspam {

// One JSON Lines record per review with exactly the keys category,
// product_name, content and (optionally) label. Blank lines are skipped.
struct Corpus {
  std::vector<Review> reviews;
  std::vector<int> lines;  // 1-based source line of each review
};

// Throws MalformedRecord (or InvalidReview) carrying the source line.
Corpus ReadCorpus(std::istream &in);
Corpus LoadCorpus(const std::filesystem::path &path);

}  // namespace revspam

#endif  // REVSPAM_CORPUS_IO_H_
