#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace autolin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphabetError : Error {
  using Error::Error;
};

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Component value standing for the padding symbol inside a convolution tuple.
inline constexpr int kPad = -1;

inline const std::string kPadToken = "#PAD";
inline const std::string kLendToken = "#LEND";
inline const std::string kBlankToken = "#BLANK";

/// Finite ordered set of symbols.
///
/// An alphabet is either plain (a list of text tokens) or a convolution
/// alphabet: all tuples over (track_i + PAD), optionally including the
/// all-PAD tuple. Tracks may themselves be convolution alphabets, which is
/// how nested encodings such as conv(conv(memory, datum), ...) are carried.
///
/// Convolution symbols are numbered in mixed radix with the first track most
/// significant and PAD ordered after every real symbol of its track, so the
/// all-PAD tuple is always the last index.
class Alphabet {
 public:
  Alphabet() : Alphabet(plain({"a"})) {}

  static Alphabet plain(std::vector<std::string> tokens) {
    if (tokens.empty()) throw AlphabetError("alphabet must be non-empty");
    auto impl = std::make_shared<Impl>();
    for (auto& t : tokens) {
      if (t.empty()) throw AlphabetError("empty symbol token");
      if (t.front() == '#') throw AlphabetError("token '" + t + "' uses the reserved '#' prefix");
    }
    impl->tokens = std::move(tokens);
    impl->finish();
    return Alphabet(std::move(impl));
  }

  static Alphabet convolution(std::vector<Alphabet> tracks, bool include_all_pad = false) {
    if (tracks.empty()) throw AlphabetError("convolution needs at least one track");
    auto impl = std::make_shared<Impl>();
    impl->tracks = std::move(tracks);
    impl->with_all_pad = include_all_pad;
    const std::size_t k = impl->tracks.size();
    impl->radix_mul.assign(k, 1);
    for (std::size_t i = k; i-- > 1;) {
      impl->radix_mul[i - 1] = impl->radix_mul[i] * (impl->tracks[i].size() + 1);
    }
    std::size_t total = impl->radix_mul[0] * (impl->tracks[0].size() + 1);
    if (!include_all_pad) --total;
    impl->components.reserve(total);
    std::vector<int> comp(k, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      std::vector<int> c(k);
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t v = rest / impl->radix_mul[i];
        rest %= impl->radix_mul[i];
        c[i] = v == impl->tracks[i].size() ? kPad : static_cast<int>(v);
      }
      std::string tok = "(";
      for (std::size_t i = 0; i < k; ++i) {
        if (i) tok += ",";
        tok += c[i] == kPad ? kPadToken : impl->tracks[i].token(static_cast<Symbol>(c[i]));
      }
      tok += ")";
      impl->tokens.push_back(std::move(tok));
      impl->components.push_back(std::move(c));
    }
    impl->finish();
    return Alphabet(std::move(impl));
  }

  std::size_t size() const { return impl_->tokens.size(); }
  const std::string& token(Symbol s) const { return impl_->tokens.at(s); }
  const std::vector<std::string>& tokens() const { return impl_->tokens; }

  std::optional<Symbol> find(std::string_view tok) const {
    auto it = impl_->index.find(std::string(tok));
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }
  Symbol at(std::string_view tok) const {
    if (auto s = find(tok)) return *s;
    throw AlphabetError("symbol '" + std::string(tok) + "' not in alphabet");
  }

  bool is_convolution() const { return !impl_->tracks.empty(); }
  std::size_t arity() const { return impl_->tracks.size(); }
  const Alphabet& track(std::size_t i) const { return impl_->tracks.at(i); }
  const std::vector<Alphabet>& tracks() const { return impl_->tracks; }
  bool has_all_pad() const { return impl_->with_all_pad; }

  /// Component of `s` on track `i`: a symbol index of that track, or kPad.
  int component(Symbol s, std::size_t i) const { return impl_->components.at(s).at(i); }
  const std::vector<int>& components(Symbol s) const { return impl_->components.at(s); }

  std::optional<Symbol> symbol_of(std::span<const int> comps) const {
    if (comps.size() != arity()) throw AlphabetError("tuple arity mismatch");
    std::size_t idx = 0;
    bool all_pad = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::size_t v;
      if (comps[i] == kPad) {
        v = impl_->tracks[i].size();
      } else {
        if (comps[i] < 0 || static_cast<std::size_t>(comps[i]) >= impl_->tracks[i].size()) {
          throw AlphabetError("tuple component out of range");
        }
        v = static_cast<std::size_t>(comps[i]);
        all_pad = false;
      }
      idx += v * impl_->radix_mul[i];
    }
    if (all_pad && !impl_->with_all_pad) return std::nullopt;
    return static_cast<Symbol>(idx);
  }
  Symbol symbol(std::initializer_list<int> comps) const {
    std::vector<int> v(comps);
    auto s = symbol_of(v);
    if (!s) throw AlphabetError("all-PAD tuple is not a symbol of this alphabet");
    return *s;
  }

  std::optional<Symbol> all_pad_symbol() const {
    if (!impl_->with_all_pad) return std::nullopt;
    return static_cast<Symbol>(size() - 1);
  }
  bool is_all_pad(Symbol s) const { return impl_->with_all_pad && s + 1 == size(); }

  /// Fully flattened components of a (possibly nested) convolution symbol.
  /// Plain alphabets have a single leaf, the symbol itself.
  const std::vector<int>& leaves(Symbol s) const { return impl_->leaves.at(s); }
  const std::vector<Alphabet>& leaf_alphabets() const { return impl_->leaf_alphabets; }
  std::size_t leaf_count() const { return impl_->leaf_alphabets.size(); }

  /// Convolution alphabet with the same tracks but with/without the all-PAD tuple.
  Alphabet with_all_pad(bool include) const {
    if (!is_convolution()) throw AlphabetError("not a convolution alphabet");
    if (include == has_all_pad()) return *this;
    return convolution(impl_->tracks, include);
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->tokens == b.impl_->tokens && a.impl_->tracks == b.impl_->tracks &&
           a.impl_->with_all_pad == b.impl_->with_all_pad;
  }

  /// Parses text into a word. Whitespace-separated tokens are used verbatim;
  /// otherwise the text is split greedily by longest matching token.
  Word parse(std::string_view text) const {
    Word w;
    if (text.find(' ') != std::string_view::npos) {
      std::size_t pos = 0;
      while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        if (end > pos) w.push_back(at(text.substr(pos, end - pos)));
        pos = end;
      }
      return w;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t best = 0;
      Symbol best_sym = 0;
      for (std::size_t len = std::min(impl_->max_token, text.size() - pos); len > 0; --len) {
        if (auto s = find(text.substr(pos, len))) {
          best = len;
          best_sym = *s;
          break;
        }
      }
      if (best == 0) {
        throw AlphabetError("cannot tokenize '" + std::string(text) + "' at offset " +
                            std::to_string(pos));
      }
      w.push_back(best_sym);
      pos += best;
    }
    return w;
  }

  std::string format(const Word& w, std::string_view sep = "") const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += sep;
      out += token(w[i]);
    }
    return out;
  }

 private:
  struct Impl {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, Symbol> index;
    std::vector<Alphabet> tracks;
    bool with_all_pad = false;
    std::vector<std::size_t> radix_mul;
    std::vector<std::vector<int>> components;
    std::vector<std::vector<int>> leaves;
    std::vector<Alphabet> leaf_alphabets;
    std::size_t max_token = 0;

    void finish() {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!index.emplace(tokens[i], static_cast<Symbol>(i)).second) {
          throw AlphabetError("duplicate symbol '" + tokens[i] + "'");
        }
        max_token = std::max(max_token, tokens[i].size());
      }
      if (tracks.empty()) {
        leaves.reserve(tokens.size());
        for (std::size_t i = 0; i < tokens.size(); ++i) leaves.push_back({static_cast<int>(i)});
        return;
      }
      for (auto& t : tracks) {
        if (t.is_convolution()) {
          for (auto& l : t.leaf_alphabets()) leaf_alphabets.push_back(l);
        } else {
          leaf_alphabets.push_back(t);
        }
      }
      leaves.reserve(components.size());
      for (auto& c : components) {
        std::vector<int> flat;
        flat.reserve(leaf_alphabets.size());
        for (std::size_t i = 0; i < tracks.size(); ++i) {
          const Alphabet& t = tracks[i];
          std::size_t n = t.is_convolution() ? t.leaf_count() : 1;
          if (c[i] == kPad) {
            flat.insert(flat.end(), n, kPad);
          } else if (t.is_convolution()) {
            auto& sub = t.leaves(static_cast<Symbol>(c[i]));
            flat.insert(flat.end(), sub.begin(), sub.end());
          } else {
            flat.push_back(c[i]);
          }
        }
        leaves.push_back(std::move(flat));
      }
    }
  };

  explicit Alphabet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// conv(w_1, ..., w_k): position j holds the tuple of j-th symbols, PAD where
/// a word is exhausted.
inline Word convolve(const std::vector<Word>& words, const Alphabet& conv) {
  if (!conv.is_convolution() || conv.arity() != words.size()) {
    throw AlphabetError("convolve: alphabet arity does not match word count");
  }
  std::size_t len = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (Symbol s : words[i]) {
      if (s >= conv.track(i).size()) throw AlphabetError("convolve: symbol outside track alphabet");
    }
    len = std::max(len, words[i].size());
  }
  Word out;
  out.reserve(len);
  std::vector<int> comps(words.size());
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      comps[i] = j < words[i].size() ? static_cast<int>(words[i][j]) : kPad;
    }
    out.push_back(*conv.symbol_of(comps));
  }
  return out;
}

/// Inverse of convolve. Rejects words where a track resumes after PAD.
/// Trailing all-PAD tuples (when the alphabet has them) are ignored.
inline std::vector<Word> deconvolve(const Word& w, const Alphabet& conv) {
  if (!conv.is_convolution()) throw AlphabetError("deconvolve: not a convolution alphabet");
  std::vector<Word> out(conv.arity());
  std::vector<bool> ended(conv.arity(), false);
  for (Symbol s : w) {
    for (std::size_t i = 0; i < conv.arity(); ++i) {
      int c = conv.component(s, i);
      if (c == kPad) {
        ended[i] = true;
      } else {
        if (ended[i]) throw AlphabetError("deconvolve: malformed padding on track " + std::to_string(i));
        out[i].push_back(static_cast<Symbol>(c));
      }
    }
  }
  return out;
}

/// True iff no track carries a real symbol after a PAD.
inline bool well_formed(const Word& w, const Alphabet& conv) {
  std::vector<bool> ended(conv.arity(), false);
  for (Symbol s : w) {
    for (std::size_t i = 0; i < conv.arity(); ++i) {
      int c = conv.component(s, i);
      if (c == kPad) {
        ended[i] = true;
      } else if (ended[i]) {
        return false;
      }
    }
  }
  return true;
}

/// Maps a word of one alphabet onto another by token identity.
inline std::optional<Word> retokenize(const Word& w, const Alphabet& from, const Alphabet& to) {
  Word out;
  out.reserve(w.size());
  for (Symbol s : w) {
    auto t = to.find(from.token(s));
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  return out;
}

}  // namespace autolin
