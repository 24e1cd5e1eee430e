#!/usr/bin/env python3
"""Regenerates assets/sentiment_lexicon.tsv.

The lexicon is a curated list of sentiment-laden tokens with mean valences
on the usual [-4, +4] scale. The file follows the standard 4-column layout
(token, mean valence, stddev, raw ratings) so it can be swapped for any
other lexicon in the same format. Ratings are ten integers whose mean is
exactly the stated valence.
"""

import math
from pathlib import Path

WORDS = {
    # strong positive
    "love": 3.2, "loved": 2.9, "loves": 2.7, "adore": 3.2, "awesome": 3.1,
    "excellent": 3.0, "amazing": 2.8, "wonderful": 2.7, "fantastic": 2.9,
    "great": 3.1, "greatest": 3.2, "perfect": 2.7, "beautiful": 2.9,
    "brilliant": 2.8, "superb": 3.1, "delight": 2.9, "delighted": 2.9,
    "delightful": 2.8, "joy": 2.9, "joyful": 3.0, "gorgeous": 3.0,
    "best": 3.2, "thrilled": 3.0, "thrilling": 2.7, "lovely": 2.8,
    "magnificent": 3.0, "outstanding": 3.1, "spectacular": 2.9,
    "fabulous": 2.9, "terrific": 2.9, "stunning": 2.7, "marvelous": 2.9,
    "paradise": 3.0, "bliss": 2.9, "triumph": 2.6, "victory": 2.6,
    # positive
    "good": 1.9, "nice": 1.8, "happy": 2.7, "happiness": 2.6, "glad": 2.0,
    "fun": 2.3, "enjoy": 2.2, "enjoyed": 2.3, "enjoyable": 2.2,
    "like": 1.5, "liked": 1.7, "likes": 1.6, "safe": 1.5, "safer": 1.6,
    "safely": 1.4, "safety": 1.2, "smooth": 1.3, "smoother": 1.4,
    "improve": 1.6, "improved": 1.8, "improvement": 1.6, "improving": 1.6,
    "useful": 1.9, "helpful": 1.8, "helps": 1.4, "help": 1.7,
    "friendly": 2.2, "friend": 2.2, "friends": 2.1, "thanks": 1.9,
    "thank": 1.5, "thankful": 2.3, "welcome": 2.0, "welcoming": 2.1,
    "clean": 1.7, "cleaner": 1.6, "comfortable": 1.9, "comfort": 1.6,
    "convenient": 1.7, "easy": 1.9, "easier": 1.6, "scenic": 1.8,
    "sunny": 1.6, "win": 2.8, "winner": 2.8, "winning": 2.4,
    "succeed": 2.2, "success": 2.7, "successful": 2.6, "support": 1.7,
    "supported": 1.6, "supportive": 2.0, "agree": 1.5, "agreed": 1.6,
    "recommend": 1.6, "recommended": 1.6, "cool": 1.3, "fresh": 1.3,
    "generous": 2.3, "grateful": 2.5, "gratitude": 2.4, "appreciate": 1.9,
    "appreciated": 2.0, "pleasant": 2.3, "pleased": 2.1, "pleasure": 2.6,
    "proud": 2.2, "pride": 1.8, "excited": 2.2, "exciting": 2.2,
    "excitement": 2.1, "impressive": 2.3, "impressed": 2.1, "smile": 2.3,
    "smiling": 2.4, "laugh": 2.2, "laughing": 2.2, "celebrate": 2.7,
    "celebration": 2.6, "favorite": 2.0, "favourite": 2.0, "gem": 1.9,
    "charming": 2.4, "cozy": 1.9, "vibrant": 1.9, "peaceful": 2.2,
    "quiet": 1.0, "kind": 1.8, "kindness": 2.4, "gentle": 1.8,
    "reliable": 1.8, "protected": 1.3, "protection": 1.2, "protect": 1.2,
    "encourage": 1.7, "encouraging": 1.9, "progress": 1.6, "bonus": 1.8,
    "free": 1.6, "freedom": 2.3, "glorious": 2.8, "heaven": 2.9,
    "heart": 1.6, "care": 1.6, "caring": 2.2, "loyal": 2.1,
    "inspire": 2.3, "inspiring": 2.5, "positive": 2.1, "optimistic": 1.9,
    # mild positive
    "ok": 0.9, "okay": 0.9, "fine": 0.8, "decent": 1.2, "fair": 1.2,
    "hope": 1.9, "hopeful": 2.1, "hoping": 1.6, "interesting": 1.7,
    "interested": 1.6, "calm": 1.3, "relief": 1.9, "relieved": 2.1,
    "worth": 0.9, "worthy": 1.9, "solid": 1.1, "steady": 1.1,
    "yeah": 1.2, "yes": 1.7, "wow": 2.8, "please": 1.1,
    # strong negative
    "hate": -2.7, "hated": -2.6, "hates": -2.3, "horrible": -2.5,
    "terrible": -2.1, "awful": -2.0, "disgusting": -2.4, "disaster": -2.5,
    "disastrous": -2.6, "tragic": -2.6, "tragedy": -2.8, "furious": -2.7,
    "devastated": -2.9, "devastating": -2.8, "worst": -3.1,
    "nightmare": -2.5, "horrific": -2.8, "horror": -2.7, "kill": -3.7,
    "killed": -3.4, "killing": -3.2, "death": -2.9, "die": -2.9,
    "died": -2.9, "dead": -3.3, "murder": -3.6, "catastrophe": -3.0,
    "catastrophic": -2.9, "hell": -3.0, "cruel": -2.8, "brutal": -2.7,
    "evil": -3.3, "hideous": -2.4, "atrocious": -2.6, "abysmal": -2.4,
    # negative
    "bad": -2.5, "sad": -2.1, "sadly": -2.0, "sadness": -2.2,
    "angry": -2.3, "anger": -2.7, "mad": -2.2, "upset": -1.9,
    "annoying": -1.8, "annoyed": -1.7, "annoy": -1.6, "frustrated": -2.1,
    "frustrating": -2.0, "frustration": -2.1, "fear": -2.2, "afraid": -2.0,
    "scared": -2.2, "scary": -2.2, "danger": -2.4, "dangerous": -2.3,
    "dangerously": -2.2, "crash": -1.7, "crashed": -1.9, "crashes": -1.6,
    "collision": -1.9, "collide": -1.5, "accident": -1.9, "accidents": -1.9,
    "hurt": -2.0, "hurts": -1.9, "injury": -2.0, "injuries": -2.0,
    "injured": -2.1, "pain": -2.3, "painful": -2.3, "broken": -1.9,
    "broke": -1.6, "stolen": -2.2, "steal": -2.2, "stole": -2.1,
    "stealing": -2.2, "theft": -2.1, "thief": -2.3, "thieves": -2.3,
    "robbery": -2.5, "robbed": -2.4, "crime": -2.5, "criminal": -2.4,
    "vandalism": -2.2, "vandalized": -2.2, "problem": -1.6,
    "problems": -1.7, "fail": -2.3, "failed": -2.3, "failure": -2.4,
    "fails": -2.1, "wrong": -1.7, "worse": -2.1, "poor": -1.9,
    "poorly": -1.8, "ugly": -2.1, "dirty": -1.8, "mess": -1.6,
    "messy": -1.5, "blocked": -1.3, "blocking": -1.2, "complaint": -1.5,
    "complaints": -1.5, "complain": -1.4, "complaining": -1.5,
    "lost": -1.4, "lose": -1.5, "losing": -1.6, "loss": -1.9,
    "useless": -1.9, "helpless": -1.9, "defeated": -2.0, "unsafe": -1.9,
    "risky": -1.3, "risk": -1.1, "hazard": -1.9, "hazardous": -2.0,
    "threat": -2.1, "threatening": -2.3, "damage": -1.8, "damaged": -1.8,
    "ruin": -2.1, "ruined": -2.2, "destroy": -2.5, "destroyed": -2.6,
    "pathetic": -2.3, "shame": -2.1, "ashamed": -2.2, "disappointed": -2.1,
    "disappointing": -2.2, "disappointment": -2.2, "dread": -2.2,
    "worried": -1.6, "worry": -1.6, "worrying": -1.7, "anxious": -1.6,
    "anxiety": -2.0, "stress": -1.8, "stressful": -2.0, "stressed": -1.9,
    "terrifying": -2.7, "terrified": -2.6, "panic": -2.2, "grim": -1.9,
    "hopeless": -2.2, "miserable": -2.5, "misery": -2.6, "suffer": -2.3,
    "suffering": -2.4, "victim": -1.9, "violent": -2.7, "violence": -2.8,
    "war": -2.9, "toxic": -2.2, "trash": -1.6, "garbage": -1.5,
    "malicious": -2.3, "unfair": -1.9, "unhappy": -1.9, "avoid": -1.2,
    "ignore": -1.3, "ignored": -1.5, "neglect": -2.0, "neglected": -2.0,
    "doubt": -1.5, "doubtful": -1.4, "no": -1.2, "dislike": -1.6,
    "disliked": -1.6, "regret": -2.0, "regrets": -1.9, "sorry": -0.3,
    "struggle": -1.7, "struggling": -1.8, "difficult": -1.5, "hard": -0.4,
    "harsh": -1.8, "severe": -1.8, "deadly": -2.9, "fatal": -2.7,
    "fatality": -2.8, "sick": -1.7, "tired": -1.4, "exhausted": -1.6,
    # mild negative
    "slow": -0.8, "delay": -1.2, "delays": -1.2, "delayed": -1.3,
    "meh": -0.9, "boring": -1.3, "noise": -0.9, "noisy": -1.2,
    "expensive": -1.0, "crowded": -0.9, "confusing": -1.3,
    "confused": -1.2, "inconvenient": -1.4, "bumpy": -1.0, "rough": -1.0,
    "pothole": -1.2, "potholes": -1.3, "cracked": -0.9, "faded": -0.7,
    "fading": -0.6, "wind": -0.2, "cold": -0.6, "wet": -0.4,
    "rain": -0.5, "rainy": -0.6, "mud": -0.6, "muddy": -0.8,
    # idiom carriers and misc
    "shit": -2.6, "bomb": -2.2, "ass": -2.5, "badass": 1.5,
    "right": 0.6, "alive": 1.5, "beating": -1.4, "stop": -0.9,
    # emoticons
    ":)": 1.3, ":-)": 1.3, ":(": -1.6, ":-(": -1.6, ":D": 2.3,
    ";)": 1.1, ":/": -0.8, "<3": 2.3,
}


def ratings_for(valence: float):
    total = round(valence * 10)
    base = math.floor(total / 10)
    extra = total - 10 * base  # entries set to base+1
    ratings = [base + 1] * extra + [base] * (10 - extra)
    assert sum(ratings) == total and all(-4 <= r <= 4 for r in ratings)
    return ratings


def main():
    out = Path(__file__).resolve().parent.parent / "assets" / "sentiment_lexicon.tsv"
    lines = []
    for token, valence in sorted(WORDS.items()):
        ratings = ratings_for(valence)
        mean = sum(ratings) / 10.0
        sd = math.sqrt(sum((r - mean) ** 2 for r in ratings) / 10.0)
        lines.append(f"{token}\t{mean:.1f}\t{sd:.5f}\t{ratings}")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} entries to {out}")


if __name__ == "__main__":
    main()
