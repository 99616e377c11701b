"""Embedded word lists for the built-in tagger.

Deliberately compact: a standard English stopword list, a lexicon of
common verb base forms, an irregular-inflection map, and a short list
of frequent adjectives/adverbs routed to the `other` class.  Quality
parity with full NLP suites is a non-goal; these lists exist so that a
plain-text corpus can be driven end to end without external models.
"""

STOPWORDS = frozenset("""
a about above after again against all am an and any are as at be because been
before being below between both but by can cannot could did do does doing down
during each few for from further had has have having he her here hers herself
him himself his how i if in into is it its itself just me more most my myself
no nor not now o of off on once only or other our ours ourselves out over own
same shall she should so some such than that the their theirs them themselves
then there these they this those through till to too under until up upon very
was we were what when where which while who whom why will with you your yours
yourself yourselves
d ll m re s t ve y ma don didn doesn hadn hasn haven isn mightn mustn needn
shan shouldn wasn weren won wouldn
""".split())

# Base forms recognized as verbs.  Modals the basis may need (e.g. "would")
# are kept out of the stopword list above.
VERB_LEXICON = frozenset("""
add answer appear ask beat begin believe belong bite blow break bring build
burn buy call care carry catch change chase choose climb come consider continue
cost creep cry cut dance dare decide dig draw dream drink drive drop eat
exclaim explain fall fan feel fetch fight find finish fly fold follow forget
get give go grin grow guess happen hate hear help hide hit hold hop hope hurry
interrupt join jump keep kick kill kiss knock know laugh lead learn leave lie
like listen live look lose love make manage mark matter mean meet mention mind
miss move mutter need nod notice obey offer open order pass pay pick pinch
play please point pour pull push put question rattle reach read remark
remember repeat reply rest return ring rise roar rub run say see seem send
set shake share shout show shrink shut sigh sing sink sit sleep smile sneeze
soothe speak spell splash spread stand stare start stay stop stretch strike
succeed suppose swallow swim take talk teach tell think throw tremble trot
trust try turn twinkle understand upset use vanish wait walk want watch wave
wear whisper win wish wonder would write
""".split())

# Irregular surface form -> verb lemma.
IRREGULAR_VERBS = {
    "ate": "eat", "began": "begin", "begun": "begin", "bit": "bite",
    "bitten": "bite", "blew": "blow", "bought": "buy", "broke": "break",
    "broken": "break", "brought": "bring", "built": "build", "burnt": "burn",
    "came": "come", "caught": "catch", "chose": "choose", "crept": "creep",
    "cried": "cry", "dug": "dig", "drank": "drink", "dreamt": "dream",
    "drew": "draw", "dried": "dry", "drove": "drive", "fell": "fall",
    "felt": "feel", "fetched": "fetch", "flew": "fly", "forgot": "forget",
    "fought": "fight", "found": "find", "gave": "give", "gone": "go",
    "got": "get", "grew": "grow", "heard": "hear", "held": "hold",
    "hid": "hide", "hurried": "hurry", "kept": "keep", "knew": "know",
    "lay": "lie", "led": "lead", "left": "leave", "lost": "lose",
    "made": "make", "meant": "mean", "met": "meet", "paid": "pay",
    "ran": "run", "rang": "ring", "replied": "reply", "rose": "rise",
    "said": "say", "sang": "sing", "sank": "sink", "sat": "sit",
    "saw": "see", "sent": "send", "shook": "shake", "shrank": "shrink",
    "slept": "sleep", "sought": "seek", "spoke": "speak", "sprang": "spring",
    "spread": "spread", "stood": "stand", "struck": "strike", "swam": "swim",
    "swallowed": "swallow", "taught": "teach", "thought": "think",
    "threw": "throw", "told": "tell", "took": "take", "tried": "try",
    "understood": "understand", "went": "go", "wept": "weep",
    "wore": "wear", "woke": "wake", "won": "win", "wrote": "write",
}

# Frequent adjectives/quantifiers routed to `other` so they do not
# crowd the noun basis.
OTHER_WORDS = frozenset("""
afraid alone angry anxious bad beautiful best better big black blue bright
busy certain cold curious dear deep different dreadful dry easy eleven empty
even fast fine first fond four free full glad golden good great green grand
half happy hard high hot hungry large last late least less little long loud
low mad many much narrow near new next nice nine old one oh once per
pleasant poor pretty proud quick quiet ready real right round rude sad safe
second seven several sharp short shy silent simple six sleepy slow small soft
sorry stupid sure sweet tall ten third three tired tiny true twelve two ugly
usual warm weak wet white whole wide wild wise wrong yes young
""".split())
