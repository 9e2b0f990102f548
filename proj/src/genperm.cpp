#include "linvol/genperm.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace linvol {

GenPerm::GenPerm(std::vector<std::string> names, std::vector<LetterId> word, int top_len)
    : names_(std::move(names)), word_(std::move(word)), top_len_(top_len) {
  size_ = static_cast<int>(word_.size());
  if (top_len_ < 1 || size_ - top_len_ < 1)
    throw EmptyRowError("both rows of a generalized permutation must be nonempty");
  if (size_ % 2 != 0) throw LetterCountError("odd number of letter occurrences");
  d_ = size_ / 2;
  if (d_ > kMaxLetters) throw SizeLimitError("more than " + std::to_string(kMaxLetters) + " letters");

  std::vector<int> count(d_, 0);
  for (LetterId id : word_) {
    if (id >= d_) throw LetterCountError("letter id out of range");
    ++count[id];
  }
  for (int i = 0; i < d_; ++i)
    if (count[i] != 2) {
      std::string name = names_.empty() ? std::to_string(i + 1) : names_[i];
      throw LetterCountError("letter '" + name + "' occurs " + std::to_string(count[i]) +
                             " times, expected 2");
    }
  if (!names_.empty() && static_cast<int>(names_.size()) != d_)
    throw ParseError("name table size mismatch");
  build_twin();
}

void GenPerm::build_twin() {
  twin_.assign(size_, -1);
  std::array<int, kMaxLetters> first;
  first.fill(-1);
  for (int i = 0; i < size_; ++i) {
    LetterId id = word_[i];
    if (first[id] < 0) {
      first[id] = i;
    } else {
      twin_[i] = static_cast<std::int16_t>(first[id]);
      twin_[first[id]] = static_cast<std::int16_t>(i);
    }
  }
}

GenPerm GenPerm::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  std::string normalized(text);
  int slashes = 0;
  for (char& c : normalized) {
    if (c == '/') ++slashes;
    if (c == '\n') {
      c = '/';
      ++slashes;
    }
  }
  if (slashes != 1) throw ParseError("expected exactly two rows separated by '/' or a newline");
  auto slash = normalized.find('/');

  std::vector<std::string> names;
  std::map<std::string, LetterId> ids;
  std::vector<LetterId> word;
  int top_len = 0;

  auto scan_row = [&](std::string_view row) {
    int tokens = 0;
    std::size_t i = 0;
    while (i < row.size()) {
      if (std::isspace(static_cast<unsigned char>(row[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < row.size() && !std::isspace(static_cast<unsigned char>(row[j]))) ++j;
      std::string tok(row.substr(i, j - i));
      for (char c : tok)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw ParseError("invalid token '" + tok + "'");
      auto it = ids.find(tok);
      LetterId id;
      if (it == ids.end()) {
        id = static_cast<LetterId>(names.size());
        if (names.size() >= kMaxLetters) throw SizeLimitError("too many letters");
        ids.emplace(tok, id);
        names.push_back(tok);
      } else {
        id = it->second;
      }
      word.push_back(id);
      ++tokens;
      i = j;
    }
    return tokens;
  };

  top_len = scan_row(std::string_view(normalized).substr(0, slash));
  int bottom = scan_row(std::string_view(normalized).substr(slash + 1));
  if (top_len == 0 || bottom == 0) throw EmptyRowError("empty row");
  return GenPerm(std::move(names), std::move(word), top_len);
}

GenPerm GenPerm::from_key(const GpKey& key) {
  std::vector<LetterId> word(key.w.begin(), key.w.begin() + key.total);
  return GenPerm({}, std::move(word), key.top_len);
}

std::string GenPerm::letter_name(LetterId id) const {
  if (names_.empty()) return std::to_string(id + 1);
  return names_[id];
}

bool GenPerm::is_true_permutation() const {
  if (top_len_ != d_) return false;
  for (int i = 0; i < top_len_; ++i)
    if (twin_[i] < top_len_) return false;
  return true;
}

bool GenPerm::convention_ok() const {
  if (is_true_permutation()) return d_ >= 2;
  bool top_pair = false, bottom_pair = false;
  for (int i = 0; i < top_len_ && !top_pair; ++i) top_pair = twin_[i] < top_len_;
  for (int i = top_len_; i < size_ && !bottom_pair; ++i) bottom_pair = twin_[i] >= top_len_;
  return top_pair && bottom_pair;
}

AlphabetSplit GenPerm::split() const {
  AlphabetSplit out;
  for (int i = 0; i < size_; ++i) {
    if (twin_[i] < i) continue;  // visit each letter at its first occurrence
    LetterId id = word_[i];
    bool first_top = i < top_len_;
    bool second_top = twin_[i] < top_len_;
    if (first_top && second_top) {
      out.a0.push_back(id);
      out.mask0 |= LetterMask{1} << id;
    } else if (!first_top && !second_top) {
      out.a1.push_back(id);
      out.mask1 |= LetterMask{1} << id;
    } else {
      out.a01.push_back(id);
      out.mask01 |= LetterMask{1} << id;
    }
  }
  auto by_id = [](LetterId a, LetterId b) { return a < b; };
  std::sort(out.a01.begin(), out.a01.end(), by_id);
  std::sort(out.a0.begin(), out.a0.end(), by_id);
  std::sort(out.a1.begin(), out.a1.end(), by_id);
  return out;
}

GenPerm GenPerm::mirror_s() const {
  std::vector<LetterId> word(size_);
  for (int k = 0; k < size_; ++k) word[k] = word_[size_ - 1 - k];
  return GenPerm(names_, std::move(word), bottom_len());
}

GenPerm GenPerm::canonical() const {
  std::array<int, kMaxLetters> relabel;
  relabel.fill(-1);
  int next = 0;
  std::vector<LetterId> word(size_);
  for (int i = 0; i < size_; ++i) {
    LetterId id = word_[i];
    if (relabel[id] < 0) relabel[id] = next++;
    word[i] = static_cast<LetterId>(relabel[id]);
  }
  return GenPerm({}, std::move(word), top_len_);
}

bool GenPerm::is_canonical() const {
  int next = 0;
  for (int i = 0; i < size_; ++i) {
    LetterId id = word_[i];
    if (id > next) return false;
    if (id == next) ++next;
  }
  if (!names_.empty())
    for (int i = 0; i < d_; ++i)
      if (names_[i] != std::to_string(i + 1)) return false;
  return true;
}

GpKey GenPerm::key() const {
  GpKey k;
  k.top_len = static_cast<std::uint8_t>(top_len_);
  k.total = static_cast<std::uint8_t>(size_);
  std::array<int, kMaxLetters> relabel;
  relabel.fill(-1);
  int next = 0;
  for (int i = 0; i < size_; ++i) {
    LetterId id = word_[i];
    if (relabel[id] < 0) relabel[id] = next++;
    k.w[i] = static_cast<std::uint8_t>(relabel[id]);
  }
  return k;
}

std::string GenPerm::str() const {
  std::ostringstream os;
  for (int i = 0; i < size_; ++i) {
    if (i == top_len_) os << " /";
    if (i > 0) os << ' ';
    os << letter_name(word_[i]);
  }
  return os.str();
}

bool operator==(const GenPerm& a, const GenPerm& b) {
  if (a.top_len_ != b.top_len_ || a.word_ != b.word_) return false;
  if (a.names_ == b.names_) return true;
  for (int i = 0; i < a.d_; ++i)
    if (a.letter_name(static_cast<LetterId>(i)) != b.letter_name(static_cast<LetterId>(i)))
      return false;
  return true;
}

namespace {

// Canonical words: position by position, either reuse the smallest-id open
// letter choices or introduce the next fresh letter.
void gen_words(std::vector<LetterId>& word, std::vector<int>& open, int used, int d,
               const std::function<void(const std::vector<LetterId>&)>& yield) {
  if (static_cast<int>(word.size()) == 2 * d) {
    yield(word);
    return;
  }
  for (int id = 0; id < used; ++id) {
    if (open[id]) {
      open[id] = 0;
      word.push_back(static_cast<LetterId>(id));
      gen_words(word, open, used, d, yield);
      word.pop_back();
      open[id] = 1;
    }
  }
  if (used < d) {
    open.push_back(1);
    word.push_back(static_cast<LetterId>(used));
    gen_words(word, open, used + 1, d, yield);
    word.pop_back();
    open.pop_back();
  }
}

}  // namespace

void enumerate_all(int d, bool require_convention,
                   const std::function<void(const GenPerm&)>& yield, int max_d) {
  if (d < 1 || d > max_d)
    throw SizeLimitError("enumerate_all: d must lie in [1, " + std::to_string(max_d) + "]");
  std::vector<LetterId> word;
  std::vector<int> open;
  gen_words(word, open, 0, d, [&](const std::vector<LetterId>& w) {
    for (int l = 1; l < 2 * d; ++l) {
      GenPerm gp({}, w, l);
      if (require_convention && !gp.convention_ok()) continue;
      if (!gp.is_canonical()) continue;  // canonical depends on the word only
      yield(gp);
    }
  });
}

std::vector<GenPerm> enumerate_all(int d, bool require_convention, int max_d) {
  std::vector<GenPerm> out;
  enumerate_all(d, require_convention, [&](const GenPerm& gp) { out.push_back(gp); }, max_d);
  return out;
}

}  // namespace linvol
