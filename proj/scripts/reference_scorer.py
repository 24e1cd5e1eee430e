#!/usr/bin/env python3
"""Reference scorer used to freeze tests/data/sentiment_fixture.json.

This is a direct Python transcription of the published VADER rule set
(Hutto & Gilbert 2014, reference implementation v3.3.2), kept independent
of the C++ engine so the two act as cross-checks. Two deliberate
differences from the PyPI package, mirrored by the engine:
  * no emoji-to-description pre-pass (emoji are scored only when present
    in the lexicon file itself),
  * the exclamation-point count caps at 3, per the method's original
    description,
and the final rounding step is omitted so fixtures store full precision.

Usage: reference_scorer.py <lexicon.tsv> <out.json>
"""

import json
import math
import string
import sys

B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733
N_SCALAR = -0.74

NEGATE = [
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
    "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom",
    "despite",
]

BOOSTER_DICT = {
    "absolutely": B_INCR, "amazingly": B_INCR, "awfully": B_INCR,
    "completely": B_INCR, "considerable": B_INCR, "considerably": B_INCR,
    "decidedly": B_INCR, "deeply": B_INCR, "effing": B_INCR,
    "enormous": B_INCR, "enormously": B_INCR, "entirely": B_INCR,
    "especially": B_INCR, "exceptional": B_INCR, "exceptionally": B_INCR,
    "extreme": B_INCR, "extremely": B_INCR, "fabulously": B_INCR,
    "flipping": B_INCR, "flippin": B_INCR, "frackin": B_INCR,
    "fracking": B_INCR, "fricking": B_INCR, "frickin": B_INCR,
    "frigging": B_INCR, "friggin": B_INCR, "fully": B_INCR,
    "fuckin": B_INCR, "fucking": B_INCR, "fuggin": B_INCR,
    "fugging": B_INCR, "greatly": B_INCR, "hella": B_INCR, "highly": B_INCR,
    "hugely": B_INCR, "incredible": B_INCR, "incredibly": B_INCR,
    "intensely": B_INCR, "major": B_INCR, "majorly": B_INCR, "more": B_INCR,
    "most": B_INCR, "particularly": B_INCR, "purely": B_INCR,
    "quite": B_INCR, "really": B_INCR, "remarkably": B_INCR, "so": B_INCR,
    "substantially": B_INCR, "thoroughly": B_INCR, "total": B_INCR,
    "totally": B_INCR, "tremendous": B_INCR, "tremendously": B_INCR,
    "uber": B_INCR, "unbelievably": B_INCR, "unusually": B_INCR,
    "utter": B_INCR, "utterly": B_INCR, "very": B_INCR,
    "almost": B_DECR, "barely": B_DECR, "hardly": B_DECR,
    "just enough": B_DECR, "kind of": B_DECR, "kinda": B_DECR,
    "kindof": B_DECR, "kind-of": B_DECR, "less": B_DECR, "little": B_DECR,
    "marginal": B_DECR, "marginally": B_DECR, "occasional": B_DECR,
    "occasionally": B_DECR, "partly": B_DECR, "scarce": B_DECR,
    "scarcely": B_DECR, "slight": B_DECR, "slightly": B_DECR,
    "somewhat": B_DECR, "sort of": B_DECR, "sorta": B_DECR,
    "sortof": B_DECR, "sort-of": B_DECR,
}

SPECIAL_CASES = {
    "the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5,
    "bus stop": 0.0, "yeah right": -2, "kiss of death": -1.5,
    "to die for": 3, "beating heart": 3.1, "broken heart": -2.9,
}


def negated(input_words, include_nt=True):
    input_words = [str(w).lower() for w in input_words]
    for word in NEGATE:
        if word in input_words:
            return True
    if include_nt:
        for word in input_words:
            if "n't" in word:
                return True
    return False


def normalize(score, alpha=15):
    norm_score = score / math.sqrt((score * score) + alpha)
    if norm_score < -1.0:
        return -1.0
    if norm_score > 1.0:
        return 1.0
    return norm_score


def allcap_differential(words):
    allcap_words = 0
    for word in words:
        if word.isupper():
            allcap_words += 1
    cap_differential = len(words) - allcap_words
    return 0 < cap_differential < len(words)


def scalar_inc_dec(word, valence, is_cap_diff):
    scalar = 0.0
    word_lower = word.lower()
    if word_lower in BOOSTER_DICT:
        scalar = BOOSTER_DICT[word_lower]
        if valence < 0:
            scalar *= -1
        if word.isupper() and is_cap_diff:
            if valence > 0:
                scalar += C_INCR
            else:
                scalar -= C_INCR
    return scalar


class SentiText:
    def __init__(self, text):
        if not isinstance(text, str):
            text = str(text).encode("utf-8")
        self.text = text
        self.words_and_emoticons = self._words_and_emoticons()
        self.is_cap_diff = allcap_differential(self.words_and_emoticons)

    @staticmethod
    def _strip_punc_if_word(token):
        stripped = token.strip(string.punctuation)
        if len(stripped) <= 2:
            return token
        return stripped

    def _words_and_emoticons(self):
        wes = self.text.split()
        stripped = list(map(self._strip_punc_if_word, wes))
        return stripped


class SentimentIntensityAnalyzer:
    def __init__(self, lexicon_path):
        self.lexicon = {}
        with open(lexicon_path, encoding="utf-8") as f:
            for line in f:
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                token, measure = line.strip().split("\t")[0:2]
                self.lexicon[token.lower()] = float(measure)

    def polarity_scores(self, text):
        text = text.strip()
        sentitext = SentiText(text)
        sentiments = []
        words_and_emoticons = sentitext.words_and_emoticons
        for i, item in enumerate(words_and_emoticons):
            valence = 0
            if item.lower() in BOOSTER_DICT:
                sentiments.append(valence)
                continue
            if (i < len(words_and_emoticons) - 1 and item.lower() == "kind"
                    and words_and_emoticons[i + 1].lower() == "of"):
                sentiments.append(valence)
                continue
            sentiments = self.sentiment_valence(valence, sentitext, item, i, sentiments)
        sentiments = self._but_check(words_and_emoticons, sentiments)
        return self.score_valence(sentiments, text)

    def sentiment_valence(self, valence, sentitext, item, i, sentiments):
        is_cap_diff = sentitext.is_cap_diff
        words_and_emoticons = sentitext.words_and_emoticons
        item_lowercase = item.lower()
        if item_lowercase in self.lexicon:
            valence = self.lexicon[item_lowercase]

            if (item_lowercase == "no" and i != len(words_and_emoticons) - 1
                    and words_and_emoticons[i + 1].lower() in self.lexicon):
                valence = 0.0
            if ((i > 0 and words_and_emoticons[i - 1].lower() == "no")
                    or (i > 1 and words_and_emoticons[i - 2].lower() == "no")
                    or (i > 2 and words_and_emoticons[i - 3].lower() == "no"
                        and words_and_emoticons[i - 1].lower() in ["or", "nor"])):
                valence = self.lexicon[item_lowercase] * N_SCALAR

            if item.isupper() and is_cap_diff:
                if valence > 0:
                    valence += C_INCR
                else:
                    valence -= C_INCR

            for start_i in range(0, 3):
                if i > start_i and words_and_emoticons[i - (start_i + 1)].lower() \
                        not in self.lexicon:
                    s = scalar_inc_dec(words_and_emoticons[i - (start_i + 1)], valence,
                                       is_cap_diff)
                    if start_i == 1 and s != 0:
                        s = s * 0.95
                    if start_i == 2 and s != 0:
                        s = s * 0.9
                    valence = valence + s
                    valence = self._negation_check(valence, words_and_emoticons, start_i, i)
                    if start_i == 2:
                        valence = self._special_idioms_check(valence, words_and_emoticons, i)

            valence = self._least_check(valence, words_and_emoticons, i)
        sentiments.append(valence)
        return sentiments

    def _least_check(self, valence, words_and_emoticons, i):
        if (i > 1 and words_and_emoticons[i - 1].lower() not in self.lexicon
                and words_and_emoticons[i - 1].lower() == "least"):
            if (words_and_emoticons[i - 2].lower() != "at"
                    and words_and_emoticons[i - 2].lower() != "very"):
                valence = valence * N_SCALAR
        elif (i > 0 and words_and_emoticons[i - 1].lower() not in self.lexicon
                and words_and_emoticons[i - 1].lower() == "least"):
            valence = valence * N_SCALAR
        return valence

    @staticmethod
    def _but_check(words_and_emoticons, sentiments):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if "but" in words_and_emoticons_lower:
            bi = words_and_emoticons_lower.index("but")
            for sentiment in sentiments:
                si = sentiments.index(sentiment)
                if si < bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 0.5)
                elif si > bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 1.5)
        return sentiments

    def _special_idioms_check(self, valence, words_and_emoticons, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        onezero = "{0} {1}".format(words_and_emoticons_lower[i - 1],
                                   words_and_emoticons_lower[i])
        twoonezero = "{0} {1} {2}".format(words_and_emoticons_lower[i - 2],
                                          words_and_emoticons_lower[i - 1],
                                          words_and_emoticons_lower[i])
        twoone = "{0} {1}".format(words_and_emoticons_lower[i - 2],
                                  words_and_emoticons_lower[i - 1])
        threetwoone = "{0} {1} {2}".format(words_and_emoticons_lower[i - 3],
                                           words_and_emoticons_lower[i - 2],
                                           words_and_emoticons_lower[i - 1])
        threetwo = "{0} {1}".format(words_and_emoticons_lower[i - 3],
                                    words_and_emoticons_lower[i - 2])
        sequences = [onezero, twoonezero, twoone, threetwoone, threetwo]
        for seq in sequences:
            if seq in SPECIAL_CASES:
                valence = SPECIAL_CASES[seq]
                break
        if len(words_and_emoticons_lower) - 1 > i:
            zeroone = "{0} {1}".format(words_and_emoticons_lower[i],
                                       words_and_emoticons_lower[i + 1])
            if zeroone in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroone]
        if len(words_and_emoticons_lower) - 1 > i + 1:
            zeroonetwo = "{0} {1} {2}".format(words_and_emoticons_lower[i],
                                              words_and_emoticons_lower[i + 1],
                                              words_and_emoticons_lower[i + 2])
            if zeroonetwo in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroonetwo]
        n_grams = [threetwoone, threetwo, twoone]
        for n_gram in n_grams:
            if n_gram in BOOSTER_DICT:
                valence = valence + BOOSTER_DICT[n_gram]
        return valence

    def _negation_check(self, valence, words_and_emoticons, start_i, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if start_i == 0:
            if negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        if start_i == 1:
            if words_and_emoticons_lower[i - 2] == "never" and (
                    words_and_emoticons_lower[i - 1] == "so"
                    or words_and_emoticons_lower[i - 1] == "this"):
                valence = valence * 1.25
            elif words_and_emoticons_lower[i - 2] == "without" and \
                    words_and_emoticons_lower[i - 1] == "doubt":
                valence = valence
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        if start_i == 2:
            if (words_and_emoticons_lower[i - 3] == "never"
                    and (words_and_emoticons_lower[i - 2] == "so"
                         or words_and_emoticons_lower[i - 2] == "this")
                    or (words_and_emoticons_lower[i - 1] == "so"
                        or words_and_emoticons_lower[i - 1] == "this")):
                valence = valence * 1.25
            elif words_and_emoticons_lower[i - 3] == "without" and \
                    (words_and_emoticons_lower[i - 2] == "doubt"
                     or words_and_emoticons_lower[i - 1] == "doubt"):
                valence = valence
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        return valence

    @staticmethod
    def _punctuation_emphasis(text):
        ep_amplifier = SentimentIntensityAnalyzer._amplify_ep(text)
        qm_amplifier = SentimentIntensityAnalyzer._amplify_qm(text)
        return ep_amplifier + qm_amplifier

    @staticmethod
    def _amplify_ep(text):
        ep_count = text.count("!")
        if ep_count > 3:
            ep_count = 3
        return ep_count * 0.292

    @staticmethod
    def _amplify_qm(text):
        qm_count = text.count("?")
        if qm_count > 1:
            if qm_count <= 3:
                return qm_count * 0.18
            return 0.96
        return 0

    @staticmethod
    def _sift_sentiment_scores(sentiments):
        pos_sum = 0.0
        neg_sum = 0.0
        neu_count = 0
        for sentiment_score in sentiments:
            if sentiment_score > 0:
                pos_sum += float(sentiment_score) + 1
            if sentiment_score < 0:
                neg_sum += float(sentiment_score) - 1
            if sentiment_score == 0:
                neu_count += 1
        return pos_sum, neg_sum, neu_count

    def score_valence(self, sentiments, text):
        if sentiments:
            sum_s = float(sum(sentiments))
            punct_emph_amplifier = self._punctuation_emphasis(text)
            if sum_s > 0:
                sum_s += punct_emph_amplifier
            elif sum_s < 0:
                sum_s -= punct_emph_amplifier
            compound = normalize(sum_s)
            pos_sum, neg_sum, neu_count = self._sift_sentiment_scores(sentiments)
            if pos_sum > math.fabs(neg_sum):
                pos_sum += punct_emph_amplifier
            elif pos_sum < math.fabs(neg_sum):
                neg_sum -= punct_emph_amplifier
            total = pos_sum + math.fabs(neg_sum) + neu_count
            pos = math.fabs(pos_sum / total)
            neg = math.fabs(neg_sum / total)
            neu = math.fabs(neu_count / total)
        else:
            compound = 0.0
            pos = 0.0
            neg = 0.0
            neu = 0.0
        return {"neg": neg, "neu": neu, "pos": pos, "compound": compound}


FIXTURE_SENTENCES = [
    "The new protected bike lane is great.",
    "The new protected bike lane is GREAT.",
    "The new protected bike lane is great!",
    "The new protected bike lane is great!!",
    "The new protected bike lane is great!!!",
    "The new protected bike lane is great!!!!!",
    "The new bike lane is not good.",
    "The intersection is not bad at all.",
    "This is very good news for commuters.",
    "This is extremely good news for commuters.",
    "The repaving was marginally better than before.",
    "I love riding along the waterfront every morning.",
    "I don't love riding in heavy traffic.",
    "My bike was stolen yesterday and I am furious.",
    "My bike was stolen yesterday... worst day ever.",
    "The city never so much as painted a line here.",
    "Without doubt the best trail in the region.",
    "The detour is annoying but the new surface is wonderful.",
    "The old path was lovely but the construction ruined it.",
    "VERY happy with the separated lane design.",
    "The plan sounds good, the funding does not.",
    "Is this lane even safe?",
    "Is this lane even safe??",
    "Is this lane even safe????",
    "At least the trail is still open.",
    "This is the least safe crossing in town.",
    "The bridge ride was kind of nice.",
    "The bridge ride was sort of terrible honestly.",
    "That pump track is the shit.",
    "The new greenway is the bomb.",
    "Yeah right, they will fix it next year.",
    "Removing the bollards was the kiss of death for that lane.",
    "The descent was bad ass and I loved every second.",
    "The commute leaves me with a broken heart.",
    "no good options for crossing the river",
    "There is no bike parking or storage anywhere downtown.",
    "The council approved neither funding nor repairs.",
    "barely passable pavement on 5th avenue",
    "hardly a terrible outcome for cyclists",
    "uneven pavement, potholes, and glass everywhere :(",
    "Fresh tarmac and sunshine today :)",
    "cars blocked the lane AGAIN and nobody cares",
    "The crosstown route is faster, safer, and prettier now.",
    "I am so so happy about the new cycle track!",
    "This so called upgrade made everything worse.",
    "never so glad to see plows clear the path",
    "The audit found nothing wrong with the design.",
    "Rarely have I seen such a useful improvement.",
    "The meeting was long and the agenda was dry.",
    "asdf qwert zxcv",
]


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 1
    analyzer = SentimentIntensityAnalyzer(sys.argv[1])
    rows = []
    for sentence in FIXTURE_SENTENCES:
        scores = analyzer.polarity_scores(sentence)
        rows.append({"text": sentence, **scores})
    with open(sys.argv[2], "w", encoding="utf-8") as f:
        json.dump(rows, f, indent=1)
        f.write("\n")
    print(f"scored {len(rows)} sentences -> {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
