// Copyright 2026 The ctr Authors.
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

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

#include "ctr/error.hpp"
#include "ctr/silveralign.hpp"

namespace ctr::silveralign {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

const std::unordered_set<std::string>& boundary_punctuation() {
  static const std::unordered_set<std::string> set = {
      ",", ";", ":", "(", ")", "[", "]", "--", ".", "!", "?", "...",
      "\xE2\x80\x94", "\xE2\x80\x93", "\xE2\x80\xA6"};
  return set;
}

const std::unordered_set<std::string>& connectives() {
  static const std::unordered_set<std::string> set = {
      "and", "but", "or", "nor", "yet", "so", "while", "whilst", "because", "although",
      "though", "whereas", "since", "after", "before", "when", "if", "unless", "until"};
  return set;
}

const std::unordered_set<std::string>& relatives() {
  static const std::unordered_set<std::string> set = {"who", "whom", "whose", "which"};
  return set;
}

// Finite auxiliaries and common irregular past forms.
const std::unordered_set<std::string>& verb_forms() {
  static const std::unordered_set<std::string> set = {
      "is", "was", "were", "are", "am", "be", "been", "being", "has", "have", "had",
      "do", "does", "did", "will", "would", "can", "could", "shall", "should", "may",
      "might", "must", "won", "said", "went", "made", "took", "gave", "came", "saw",
      "found", "got", "told", "became", "began", "left", "held", "brought", "wrote", "ran",
      "sat", "slept", "met", "led", "paid", "sent", "built", "fell", "kept", "lost",
      "spent", "stood", "thought", "understood", "chose", "drew", "drove", "ate", "flew",
      "grew", "knew", "rose", "shook", "spoke", "stole", "threw", "wore", "bought",
      "caught", "taught", "fought", "sold", "heard", "felt", "meant", "struck", "says",
      "goes", "gets", "makes", "takes", "gives"};
  return set;
}

const std::unordered_set<std::string>& non_verb_ing() {
  static const std::unordered_set<std::string> set = {
      "during", "thing", "things", "nothing", "something", "anything", "everything",
      "morning", "evening", "king", "ring", "spring", "string", "ceiling", "wedding"};
  return set;
}

const std::unordered_set<std::string>& skippable_adverbs() {
  static const std::unordered_set<std::string> set = {
      "then", "also", "later", "first", "still", "often", "never", "always", "recently",
      "subsequently", "not", "now", "once"};
  return set;
}

}  // namespace

namespace detail {

bool is_verb_like(std::string_view surface) {
  const std::string w = lower(surface);
  if (verb_forms().contains(w)) return true;
  if (w.size() > 4 && w.ends_with("ed")) return true;
  if (w.size() > 5 && w.ends_with("ing") && !non_verb_ing().contains(w)) return true;
  return false;
}

}  // namespace detail

namespace {

enum class Opener { kStart, kPunctuation, kConnective, kRelative };

struct Segment {
  std::vector<std::size_t> tokens;  // all kept tokens (may include a content connective)
  std::vector<std::size_t> body;    // tokens after the connective/relative
  Opener opener = Opener::kStart;
  bool has_verb = false;
  bool leading_verb = false;
  std::size_t first_verb = 0;
};

std::vector<Segment> segment_sentence(const Document& text, TokenRange range) {
  std::vector<Segment> segments;
  Segment cur;
  Opener pending = Opener::kStart;
  const auto close = [&] {
    if (!cur.tokens.empty()) segments.push_back(std::move(cur));
    cur = Segment{};
  };
  for (std::size_t t = range.begin; t < range.end; ++t) {
    const Token& tok = text.tokens[t];
    const std::string w = lower(tok.surface);
    if (boundary_punctuation().contains(w)) {
      close();
      pending = Opener::kPunctuation;
      continue;
    }
    const bool connective = connectives().contains(w);
    const bool relative = relatives().contains(w);
    if (connective || relative) {
      close();
      cur.opener = relative ? Opener::kRelative : Opener::kConnective;
      pending = Opener::kStart;
      if (tok.is_content) cur.tokens.push_back(t);
      continue;
    }
    if (cur.tokens.empty() && cur.body.empty() && cur.opener == Opener::kStart)
      cur.opener = segments.empty() && pending == Opener::kStart ? Opener::kStart : pending;
    cur.tokens.push_back(t);
    cur.body.push_back(t);
  }
  close();

  for (Segment& seg : segments) {
    bool seen_word = false;
    for (std::size_t t : seg.body) {
      const std::string& surface = text.tokens[t].surface;
      const bool verb = detail::is_verb_like(surface);
      if (verb && !seg.has_verb) {
        seg.has_verb = true;
        seg.first_verb = t;
      }
      if (!seen_word) {
        if (verb) {
          seg.leading_verb = true;
          seen_word = true;
        } else if (!skippable_adverbs().contains(lower(surface))) {
          seen_word = true;
        }
      }
    }
  }
  return segments;
}

std::vector<Span> to_spans(const std::string& text_id, const std::set<std::size_t>& tokens) {
  std::vector<Span> spans;
  for (std::size_t t : tokens) {
    if (!spans.empty() && spans.back().token_end == t)
      ++spans.back().token_end;
    else
      spans.push_back(Span{text_id, t, t + 1});
  }
  return spans;
}

}  // namespace

std::vector<std::size_t> tokens_of(const PropositionSpan& prop) {
  std::vector<std::size_t> out;
  for (const Span& s : prop.spans)
    for (std::size_t t = s.token_start; t < s.token_end; ++t) out.push_back(t);
  return out;
}

std::vector<PropositionSpan> extract_propositions(const Document& text, std::size_t sentence) {
  if (sentence >= text.sentences.size())
    throw ValidationError("sentence " + std::to_string(sentence) + " out of range");
  const TokenRange range = text.sentences[sentence];
  const std::vector<Segment> segments = segment_sentence(text, range);

  struct Draft {
    std::set<std::size_t> tokens;
    std::size_t head;
  };
  std::vector<Draft> drafts;
  std::set<std::size_t> subject;
  bool subject_pending = false;

  const auto head_of = [](const Segment& seg) {
    if (seg.has_verb) return seg.first_verb;
    return seg.tokens.back();
  };

  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& seg = segments[k];
    const std::set<std::size_t> own(seg.tokens.begin(), seg.tokens.end());
    if (k == 0) {
      if (seg.has_verb) {
        drafts.push_back({own, head_of(seg)});
        for (std::size_t t : seg.body) {
          if (t == seg.first_verb) break;
          subject.insert(t);
        }
      } else {
        subject = own;
        subject_pending = true;
      }
      continue;
    }
    if (seg.has_verb && seg.leading_verb) {
      Draft d{own, head_of(seg)};
      d.tokens.insert(subject.begin(), subject.end());
      drafts.push_back(std::move(d));
      subject_pending = false;
    } else if (seg.has_verb) {
      drafts.push_back({own, head_of(seg)});
    } else if (seg.opener == Opener::kPunctuation && !subject.empty()) {
      Draft d{own, head_of(seg)};
      d.tokens.insert(subject.begin(), subject.end());
      drafts.push_back(std::move(d));
      subject_pending = false;
    } else if (!drafts.empty()) {
      drafts.back().tokens.insert(own.begin(), own.end());
    } else {
      subject.insert(own.begin(), own.end());
      subject_pending = true;
    }
  }
  if (subject_pending) {
    if (drafts.empty()) {
      if (!subject.empty()) drafts.push_back({subject, *subject.rbegin()});
    } else {
      drafts.front().tokens.insert(subject.begin(), subject.end());
    }
  }

  const auto content_count = [&](const Draft& d) {
    return std::count_if(d.tokens.begin(), d.tokens.end(),
                         [&](std::size_t t) { return text.tokens[t].is_content; });
  };
  std::vector<PropositionSpan> out;
  for (const Draft& d : drafts)
    if (content_count(d) > 0) out.push_back({sentence, to_spans(text.id, d.tokens), d.head});

  if (out.empty()) {
    // Nothing contentful: one proposition over the whole sentence.
    std::set<std::size_t> all;
    for (std::size_t t = range.begin; t < range.end; ++t) all.insert(t);
    if (!all.empty()) out.push_back({sentence, to_spans(text.id, all), range.begin});
  }
  return out;
}

std::vector<PropositionSpan> extract_all(const Document& text) {
  std::vector<PropositionSpan> out;
  for (std::size_t s = 0; s < text.sentences.size(); ++s) {
    auto props = extract_propositions(text, s);
    out.insert(out.end(), std::make_move_iterator(props.begin()),
               std::make_move_iterator(props.end()));
  }
  return out;
}

}  // namespace ctr::silveralign
