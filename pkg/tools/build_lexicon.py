#!/usr/bin/env python3
"""Generate the bundled sentiment lexicon files.

Curated stem inventories per part of speech are expanded with fixed
spelling rules (plural, past, gerund, adverb, -ness, short-word
comparatives), deduplicated, made disjoint (a word claimed by both
polarities stays negative), and trimmed to the published sizes with an
even-spread deterministic rule. Output is one lowercase ASCII word per
line, ';' header comments, sorted.

Run from the repository root:

    python tools/build_lexicon.py
"""

from __future__ import annotations

from pathlib import Path

POSITIVE_TARGET = 2005
NEGATIVE_TARGET = 4782

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "postmine" / "data" / "lexicon"

# words that must survive trimming (used throughout the documentation
# and the bundled sample corpus)
PROTECTED_POSITIVE = {
    "good", "great", "happy", "excellent", "love", "win", "wins",
    "success", "successful", "innovative", "innovation", "amazing",
    "brilliant", "enjoy", "proud", "inspiring", "fantastic", "perfect",
}
PROTECTED_NEGATIVE = {
    "bad", "terrible", "awful", "sad", "fail", "fails", "failure",
    "angry", "crisis", "risk", "problem", "problems", "worst", "delay",
    "disappointing", "broken", "worried", "poor",
}

POSITIVE_ADJECTIVES = """
good great excellent amazing awesome wonderful fantastic fabulous brilliant
superb outstanding remarkable impressive exceptional marvelous splendid
terrific magnificent extraordinary incredible admirable commendable worthy
noble generous kind gentle warm friendly cordial gracious charming delightful
pleasant agreeable enjoyable satisfying gratifying refreshing invigorating
energetic vibrant lively spirited cheerful joyful joyous happy glad merry
jolly sunny radiant glowing beaming optimistic hopeful confident assured
secure safe reliable dependable trustworthy honest sincere genuine authentic
true loyal faithful devoted dedicated committed diligent industrious
productive efficient effective capable competent skilled skillful adept
proficient masterful talented gifted creative innovative inventive
imaginative resourceful clever smart intelligent wise insightful perceptive
astute sharp keen brisk quick swift agile nimble flexible adaptable versatile
robust sturdy strong powerful mighty vigorous healthy fit thriving
flourishing prosperous successful victorious triumphant winning leading
premier prime superior supreme elite exclusive luxurious elegant graceful
stylish classy refined polished sleek smooth seamless effortless easy simple
clear transparent open accessible convenient handy useful helpful beneficial
advantageous favorable valuable precious treasured cherished beloved dear
sweet lovely beautiful gorgeous stunning striking attractive appealing
alluring enchanting captivating fascinating intriguing interesting engaging
compelling persuasive convincing credible plausible sound solid stable steady
consistent coherent balanced fair just equitable impartial objective rational
reasonable sensible prudent careful thorough meticulous precise accurate
exact correct proper appropriate suitable fitting ideal perfect flawless
impeccable immaculate pristine clean fresh pure crisp bright luminous
dazzling sparkling shiny glossy brandnew modern contemporary innovative
pioneering visionary forward bold daring courageous brave fearless heroic
valiant gallant adventurous enterprising ambitious motivated driven inspired
inspiring encouraging supportive nurturing caring compassionate sympathetic
empathetic considerate thoughtful attentive respectful courteous polite
humble modest patient tolerant forgiving merciful charitable selfless
altruistic magnanimous benevolent amiable affable approachable welcoming
hospitable sociable outgoing charismatic magnetic popular renowned famous
celebrated acclaimed esteemed respected admired honored distinguished
prestigious reputable illustrious eminent notable noteworthy memorable
unforgettable legendary iconic peerless matchless unrivaled unbeatable
unmatched unsurpassed optimal prize award revolutionary groundbreaking
transformative empowering liberating uplifting heartening reassuring
comforting soothing calming relaxing peaceful serene tranquil harmonious
blissful euphoric ecstatic elated jubilant exultant thrilled delighted
pleased content satisfied fulfilled grateful thankful appreciative proud
privileged fortunate lucky blessed favored golden rosy promising auspicious
propitious opportune timely punctual prompt responsive diligent rigorous
disciplined organized methodical systematic orderly tidy neat spotless
hygienic wholesome nourishing nutritious savory tasty delicious delectable
scrumptious luscious flavorful aromatic fragrant inviting cozy snug
comfortable spacious roomy airy sunny affordable economical thrifty
sustainable durable lasting enduring permanent resilient tough hardy
vital dynamic spry sprightly youthful evergreen ageless timeless classic
graceful poised composed collected levelheaded sane sober lucid articulate
eloquent fluent expressive vivid colorful rich abundant plentiful bountiful
generous ample copious profuse lavish grand majestic regal stately imposing
monumental epic sublime divine heavenly angelic saintly virtuous righteous
upstanding principled ethical moral decent honorable truthful candid frank
straightforward direct genuine openhearted wholehearted heartfelt earnest
zealous passionate ardent fervent eager enthusiastic avid keen spontaneous
playful witty humorous funny amusing entertaining jovial mirthful gleeful
chipper buoyant breezy carefree lighthearted smiling laughing festive
celebratory triumphal victorious glorious resplendent lustrous gleaming
polished burnished silky velvety smooth plush premium select exquisite
"""

POSITIVE_VERBS = """
enjoy delight please satisfy gratify impress inspire motivate encourage
support assist help aid benefit improve enhance enrich strengthen empower
uplift elevate boost advance promote foster nurture cultivate grow flourish
thrive prosper succeed win achieve accomplish attain excel surpass exceed
outperform shine sparkle dazzle charm captivate enchant fascinate intrigue
engage attract appeal reward celebrate praise commend applaud admire
appreciate value treasure cherish love adore like favor endorse recommend
approve trust respect honor esteem welcome embrace unite reconcile heal
restore rejuvenate revitalize refresh renew recover rebound revive save
protect secure assure reassure comfort console soothe calm relax ease
simplify streamline optimize refine polish upgrade modernize innovate create
invent pioneer discover invigorate energize animate enliven brighten gladden
cheer hearten embolden fortify enable facilitate expedite accelerate
flourish bloom blossom prevail triumph conquer master excel captivate
mesmerize spellbind delight gratify thank congratulate salute toast honor
dignify ennoble exalt glorify laud extol acclaim venerate revere idolize
"""

POSITIVE_NOUNS = """
success achievement accomplishment victory triumph winner champion master
expert talent genius wisdom insight clarity brilliance excellence quality
merit virtue integrity honesty loyalty devotion dedication passion
enthusiasm energy vitality vigor strength power courage bravery valor hero
gift blessing boon advantage benefit profit gain growth progress advancement
improvement innovation breakthrough milestone opportunity promise potential hope
optimism confidence trust faith joy happiness delight pleasure satisfaction
comfort peace harmony balance freedom liberty justice fairness generosity
kindness compassion sympathy warmth friendship love affection admiration
respect praise acclaim applause celebration cheer smile laughter fun
enjoyment bliss euphoria elation jubilation glee mirth serenity tranquility
calm relief gratitude thanks appreciation reward prize award trophy medal
honor glory fame prestige renown reputation esteem dignity grace charm
elegance beauty splendor radiance glow sparkle shine luster gem jewel
treasure fortune luck windfall bonus perk privilege abundance prosperity
wealth richness bounty plenty feast delicacy treat masterpiece marvel wonder
miracle paragon ideal pinnacle summit peak zenith apex upside benefactor
patron supporter ally friend partner mentor guide inspiration aspiration
dream vision mission purpose meaning fulfillment
"""

NEGATIVE_ADJECTIVES = """
bad terrible awful horrible dreadful atrocious abysmal appalling horrendous
hideous ghastly gruesome grim bleak dismal dreary gloomy dark murky shady
dubious questionable suspicious sketchy shoddy sloppy careless negligent
reckless rash hasty foolish stupid dumb idiotic moronic absurd ridiculous
ludicrous preposterous nonsensical senseless pointless useless worthless
futile vain hopeless helpless powerless weak feeble frail fragile brittle
flimsy rickety shaky unstable unsteady insecure unsafe dangerous hazardous
risky perilous treacherous harmful damaging destructive ruinous catastrophic
disastrous calamitous tragic unfortunate unlucky miserable wretched pitiful
pathetic sorry sad unhappy depressed dejected despondent downcast glum
morose sullen moody irritable cranky grumpy grouchy surly rude impolite
discourteous disrespectful insolent impudent arrogant haughty pompous
pretentious smug conceited selfish greedy stingy miserly mean cruel brutal
savage vicious ferocious ruthless merciless heartless callous cold unfeeling
insensitive indifferent apathetic lazy idle sluggish slow tedious boring
dull monotonous tiresome wearisome exhausting draining stressful taxing
burdensome oppressive overbearing domineering bossy controlling manipulative
deceptive deceitful dishonest untruthful lying fraudulent fake counterfeit
bogus phony sham corrupt crooked unethical immoral unscrupulous unprincipled
shameless disgraceful scandalous shameful dishonorable ignoble despicable
contemptible detestable loathsome odious repugnant repulsive revolting
disgusting sickening nauseating offensive insulting degrading demeaning
humiliating embarrassing awkward clumsy inept incompetent unqualified unfit
unsuitable inappropriate improper wrong incorrect inaccurate erroneous
mistaken faulty flawed defective broken damaged impaired deficient
inadequate insufficient lacking scarce meager paltry trivial petty
insignificant negligible inferior substandard mediocre poor cheap shabby
ragged worn tattered dilapidated decayed rotten spoiled stale rancid sour
bitter unpleasant disagreeable distasteful unsavory unpalatable bland
insipid noisy loud deafening jarring grating harsh abrasive rough coarse
crude vulgar obscene profane filthy dirty grimy polluted contaminated toxic
poisonous venomous noxious foul putrid fetid rank smelly stinking angry
furious enraged irate livid incensed indignant resentful hostile
antagonistic aggressive belligerent combative confrontational quarrelsome
contentious argumentative defiant rebellious unruly disobedient disorderly
chaotic messy cluttered disorganized confusing perplexing puzzling baffling
bewildering obscure vague ambiguous unclear muddled jumbled garbled
incoherent illogical irrational unreasonable unfair unjust biased prejudiced
partial discriminatory intolerant bigoted narrow rigid inflexible stubborn
obstinate headstrong willful perverse contrary difficult troublesome
problematic worrisome troubling disturbing alarming frightening scary
terrifying horrifying chilling creepy eerie sinister ominous menacing
threatening intimidating daunting discouraging disheartening demoralizing
depressing distressing painful hurtful agonizing excruciating unbearable
intolerable insufferable grueling severe extreme drastic violent fierce
turbulent stormy rocky bumpy jagged uneven lopsided unbalanced skewed
distorted twisted warped bent deformed misshapen ugly unsightly unattractive
homely grotesque monstrous freakish abnormal unnatural weird strange odd
bizarre outlandish erratic unpredictable unreliable undependable
untrustworthy disloyal unfaithful treasonous traitorous envious jealous
covetous possessive obsessive compulsive paranoid neurotic anxious worried
nervous tense uneasy apprehensive fearful afraid scared frightened timid
cowardly spineless gutless craven desperate frantic panicky hysterical
unhinged deranged insane mad crazy demented delusional sick ill unwell
diseased infected contagious feverish weary tired fatigued exhausted
drained depleted overworked overwhelmed swamped trapped cornered doomed
damned cursed jinxed unhelpful unproductive inefficient ineffective
incapable unconvincing uncooperative unacceptable unsatisfactory
uncomfortable unwelcome unwanted undesirable unimpressive uninspiring
unhealthy unwise unclean untrue insincere dissatisfied discontented
distrustful graceless tactless thankless joyless loveless humorless aimless
baseless brainless cheerless clueless faithless fruitless gormless hapless
jobless lawless lifeless listless luckless meaningless mindless penniless
pitiless purposeless restless rootless shiftless soulless sunless talentless
tasteless thoughtless toothless tuneless valueless visionless witless
worst last lousy junky trashy tacky gaudy garish vile nasty horrid beastly
devilish fiendish demonic evil wicked sinful villainous malicious malevolent
malignant spiteful vindictive vengeful catty snide sarcastic cynical
pessimistic defeatist fatalistic morbid macabre ghoulish grisly lurid
seedy sordid squalid slummy rundown decrepit ramshackle crumbling collapsing
failing faltering floundering struggling stagnant declining deteriorating
worsening regressive backward obsolete outdated antiquated archaic defunct
dead moribund doomed futile barren sterile fruitless arid desolate deserted
abandoned forsaken forlorn lonely isolated alienated estranged friendless
outcast unloved neglected ignored overlooked forgotten dismissed rejected
spurned snubbed shunned disliked hated despised loathed detested abhorred
scorned disdained mocked ridiculed derided belittled slighted wronged
cheated swindled betrayed deceived misled exploited abused mistreated
oppressed persecuted harassed bullied victimized scapegoated blamed accused
guilty culpable liable blameworthy reprehensible indefensible inexcusable
unforgivable unjustifiable unwarranted groundless unfounded false untenable
implausible incredible farfetched flimsy specious fallacious misleading
deceiving slippery evasive shifty furtive sneaky stealthy underhanded
devious cunning scheming conniving calculating coldblooded premeditated
spurious counterproductive detrimental adverse unfavorable inauspicious
inopportune untimely late overdue delayed stalled jammed stuck gridlocked
congested overcrowded cramped claustrophobic suffocating stifling smothering
repressive draconian tyrannical despotic dictatorial authoritarian
totalitarian lawless anarchic mutinous insubordinate derelict negligent
remiss slipshod slapdash haphazard careless hitormiss amateurish unskilled
untrained inexperienced unprepared unready illequipped outmatched outgunned
overmatched defenseless vulnerable exposed precarious dire grave critical
terminal fatal lethal deadly murderous homicidal suicidal destructive
annihilating cataclysmic apocalyptic nightmarish hellish infernal purgatorial
agonized anguished tormented tortured suffering aching hurting wounded
injured maimed crippled paralyzed disabled incapacitated bedridden
"""

NEGATIVE_VERBS = """
fail lose suffer hurt harm damage destroy ruin wreck demolish shatter smash
break crush devastate ravage sabotage undermine weaken erode corrode decay
rot spoil taint contaminate pollute poison infect sicken nauseate disgust
repel revolt offend insult degrade demean humiliate embarrass shame disgrace
dishonor discredit defame slander libel smear tarnish stain blemish mar
deface vandalize steal rob loot plunder pillage cheat swindle defraud
deceive trick dupe mislead misinform lie fabricate falsify forge manipulate
exploit abuse mistreat maltreat oppress persecute harass bully intimidate
threaten menace terrorize frighten scare alarm panic worry trouble disturb
upset distress torment torture agonize grieve mourn lament regret rue resent
envy begrudge hate despise loathe detest abhor scorn disdain mock ridicule
taunt jeer sneer scoff deride belittle disparage criticize condemn denounce
blame accuse indict convict punish penalize fine sanction ban forbid
prohibit restrict constrain confine imprison trap ensnare entangle
complicate confuse perplex puzzle baffle bewilder mystify muddle jumble
garble distort twist warp pervert corrupt bribe blackmail extort coerce
force compel burden encumber hamper hinder impede obstruct block thwart
foil frustrate disappoint dissatisfy displease annoy irritate aggravate
exasperate infuriate enrage anger provoke antagonize alienate estrange
divide polarize disrupt destabilize unsettle agitate inflame incite
instigate quarrel argue bicker squabble fight brawl clash collide conflict
contradict oppose resist defy rebel disobey violate infringe trespass
transgress sin err blunder bungle botch fumble stumble falter flounder
struggle languish stagnate decline deteriorate degenerate worsen regress
relapse collapse crash plummet plunge sink drown choke suffocate strangle
smother stifle suppress repress censor silence muzzle gag neglect ignore
disregard overlook forget abandon desert forsake betray renounce reject
refuse deny deprive withhold rescind revoke cancel abort terminate dismiss
fire expel evict banish exile ostracize exclude shun snub slight spurn
rebuff dismay discourage dishearten demoralize depress sadden wail sob
weep cry whine whimper moan groan grumble complain gripe fuss nag pester
badger hound stalk prowl lurk ambush assault attack assail batter beat
pummel thrash whip flog maul mangle mutilate dismember behead strangle
slaughter massacre murder kill slay butcher exterminate eradicate
annihilate obliterate erase expunge efface nullify void invalidate negate
undo unravel disintegrate dissolve crumble fragment splinter fracture
rupture burst explode implode backfire misfire malfunction glitch freeze
stall jam clog overheat shortcircuit miscarry flop bomb bust fold
bankrupt impoverish pauperize dispossess evict repossess foreclose default
overcharge overbill gouge fleece scalp shortchange stiff bilk con hustle
scam hoax hoodwink bamboozle beguile ensnarl entrap frame incriminate
implicate smuggle traffic launder embezzle pilfer filch poach hijack
kidnap abduct ransom hostage enslave shackle chain cage impound quarantine
blacklist boycott embargo picket strike mutiny riot rampage pillage?
mismanage miscalculate misjudge misread mishandle misinterpret
misunderstand mislabel misplace misprice misquote misreport misallocate
misapply misbehave miscount misdiagnose misdirect misgovern mishear mislay
mismatch misname misperceive misplay misprint mispronounce misrepresent
misrule misspell misspend misstate mistime mistranslate mistrust misuse
overcook overcrowd overdo overdose overdraw overeat overestimate overexpose
overextend overheat overload overpay overprice overrate overreach overreact
overrun oversell overshoot oversimplify oversleep overspend overstate
overstay overstep overstock overstrain overtax overthrow overturn overuse
overvalue overwork underachieve undercut underdeliver underestimate
underfund underpay underperform underrate undersell understaff understate
undervalue underwhelm disappoint? disavow disclaim discredit? disfigure
disgruntle dishearten? disillusion disincline disinherit dislike dislocate
dislodge dismantle disorient disown displace dispute disqualify disrespect
disrupt? dissent distract distrust disunite divulge
"""

NEGATIVE_NOUNS = """
failure loss defeat disaster catastrophe calamity tragedy misfortune mishap
accident crisis emergency danger hazard risk peril threat menace trouble
problem difficulty obstacle hurdle barrier setback complication predicament
dilemma quandary mess chaos disorder mayhem havoc turmoil upheaval
disruption disturbance commotion uproar fracas ruckus riot violence
brutality cruelty savagery atrocity outrage scandal disgrace shame dishonor
humiliation embarrassment insult offense affront slur smear slander libel
defamation lie falsehood deception deceit fraud scam hoax trickery treachery
betrayal treason conspiracy plot scheme corruption bribery extortion
blackmail theft robbery burglary larceny vandalism sabotage arson murder
manslaughter assault battery abuse neglect oppression persecution harassment
bullying intimidation coercion tyranny despotism dictatorship slavery
bondage captivity imprisonment confinement isolation loneliness alienation
estrangement divorce separation breakup rift schism feud vendetta grudge
resentment bitterness envy jealousy spite malice hatred animosity hostility
antagonism enmity rancor wrath fury rage anger irritation annoyance
frustration exasperation disappointment dissatisfaction discontent
displeasure misery suffering agony anguish torment torture pain ache hurt
wound injury trauma scar bruise illness sickness disease infection epidemic
plague contagion poison venom toxin pollution contamination filth dirt
grime squalor decay rot corrosion erosion deterioration degeneration
decline downfall collapse crash ruin wreck wreckage debris rubble
destruction devastation annihilation extinction doom gloom despair
desperation hopelessness helplessness weakness frailty fatigue exhaustion
burnout stress strain pressure burden load hardship adversity austerity
poverty destitution bankruptcy debt deficit shortage scarcity famine
drought flood earthquake storm hurricane tornado blizzard avalanche
landslide ignorance stupidity folly foolishness idiocy absurdity nonsense
drivel gibberish blunder error mistake fault flaw defect glitch bug
malfunction breakdown outage delay postponement cancellation rejection
refusal denial ban prohibition restriction constraint limitation drawback
disadvantage downside detriment damage harm havoc? curse plague? blight
scourge bane affliction ailment malady disorder? syndrome relapse seizure
stroke paralysis coma death demise casualty fatality victim prey scapegoat
outcast pariah misfit loser failure? flop dud lemon bomb bust debacle
fiasco shambles travesty mockery farce sham pretense hypocrisy duplicity
dishonesty infidelity disloyalty defection desertion abandonment truancy
negligence dereliction malpractice misconduct wrongdoing misdeed crime
felony misdemeanor offense? violation infringement transgression breach
infraction delinquency vice sin evil wickedness villainy depravity
degeneracy perversion corruption? rot? greed avarice gluttony sloth lust
pride wrath? vanity arrogance hubris insolence impudence audacity nerve
gall effrontery rudeness discourtesy disrespect contempt disdain scorn
derision ridicule mockery? taunt jeer sneer insult? putdown snub slight
rebuff rebuke reprimand reproach censure condemnation denunciation
accusation indictment conviction sentence penalty punishment fine
forfeiture confiscation repossession foreclosure eviction expulsion
banishment exile ostracism exclusion discrimination prejudice bias bigotry
racism sexism injustice unfairness inequity inequality imbalance disparity
gap rift? divide division polarization conflict dispute controversy
quarrel argument altercation clash confrontation showdown standoff
stalemate deadlock impasse gridlock bottleneck congestion overload
overcrowding shortage? deficiency insufficiency inadequacy scarcity? dearth
drought? famine? want lack absence void vacuum emptiness hollowness
meaninglessness futility pointlessness worthlessness uselessness
obsolescence decay? stagnation recession depression slump downturn
crash? selloff panic? scare fright terror horror dread fear anxiety worry
apprehension unease disquiet alarm consternation dismay shock trauma?
nightmare ordeal trial tribulation woe grief sorrow sadness melancholy
gloom? despondency dejection misery? heartache heartbreak anguish? regret
remorse guilt? shame? contrition penance mourning bereavement
"""

VOWELS = "aeiou"


def _plural(w: str) -> str:
    if w.endswith(("s", "x", "z", "ch", "sh")):
        return w + "es"
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "ies"
    return w + "s"


def _past(w: str) -> str:
    if w.endswith("e"):
        return w + "d"
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "ied"
    return w + "ed"


def _gerund(w: str) -> str:
    if w.endswith("e") and not w.endswith("ee"):
        return w[:-1] + "ing"
    return w + "ing"


def _adverb(w: str) -> str:
    if w.endswith("ic"):
        return w + "ally"
    if w.endswith("le") and len(w) > 3 and w[-3] not in VOWELS:
        return w[:-1] + "y"
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "ily"
    return w + "ly"


def _ness(w: str) -> str:
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "iness"
    return w + "ness"


def _comparative(w: str) -> str:
    if w.endswith("e"):
        return w + "r"
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "ier"
    return w + "er"


def _superlative(w: str) -> str:
    if w.endswith("e"):
        return w + "st"
    if w.endswith("y") and len(w) > 2 and w[-2] not in VOWELS:
        return w[:-1] + "iest"
    return w + "est"


def _stems(block: str) -> list[str]:
    # a trailing '?' marks stems I rejected during curation; drop them
    return [w for w in block.split() if not w.endswith("?")]


def expand_adjectives(block: str) -> set[str]:
    out: set[str] = set()
    for w in _stems(block):
        out.add(w)
        out.add(_adverb(w))
        out.add(_ness(w))
        if len(w) <= 6:
            out.add(_comparative(w))
            out.add(_superlative(w))
    return out


def expand_verbs(block: str) -> set[str]:
    out: set[str] = set()
    for w in _stems(block):
        out.update((w, _plural(w), _past(w), _gerund(w)))
    return out


def expand_nouns(block: str) -> set[str]:
    out: set[str] = set()
    for w in _stems(block):
        out.update((w, _plural(w)))
    return out


def _check(words: set[str]) -> None:
    for w in words:
        assert w.isascii() and w.isalpha() and w == w.lower(), f"bad entry {w!r}"


def trim(words: set[str], target: int, protected: set[str]) -> list[str]:
    """Deterministically drop surplus entries, spread evenly through the
    alphabet, never touching protected words."""
    missing = protected - words
    assert not missing, f"protected words missing from pool: {sorted(missing)}"
    candidates = sorted(words - protected)
    keep_n = target - len(protected)
    surplus = len(candidates) - keep_n
    assert surplus >= 0, f"pool too small: {len(words)} < {target}"
    if surplus:
        interval = len(candidates) / surplus
        drop_at = {int(interval * i + interval / 2) for i in range(surplus)}
        # set collisions would under-drop; fall back to dropping the tail
        kept = [w for i, w in enumerate(candidates) if i not in drop_at]
        kept = kept[:keep_n]
    else:
        kept = candidates
    return sorted(set(kept) | protected)


def main() -> None:
    positive = (
        expand_adjectives(POSITIVE_ADJECTIVES)
        | expand_verbs(POSITIVE_VERBS)
        | expand_nouns(POSITIVE_NOUNS)
    )
    negative = (
        expand_adjectives(NEGATIVE_ADJECTIVES)
        | expand_verbs(NEGATIVE_VERBS)
        | expand_nouns(NEGATIVE_NOUNS)
    )
    _check(positive)
    _check(negative)
    # a word claimed by both polarities stays negative
    positive -= negative
    print(f"pools: positive={len(positive)} negative={len(negative)}")

    pos = trim(positive, POSITIVE_TARGET, PROTECTED_POSITIVE)
    neg = trim(negative, NEGATIVE_TARGET, PROTECTED_NEGATIVE)
    assert len(pos) == POSITIVE_TARGET, len(pos)
    assert len(neg) == NEGATIVE_TARGET, len(neg)
    assert not set(pos) & set(neg)

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    header = (
        ";;; {polarity} opinion words for the bundled sentiment lexicon.\n"
        ";;; One lowercase word per line; lines starting with ';' are comments.\n"
        ";;; Generated by tools/build_lexicon.py; {count} entries.\n"
    )
    with open(OUT_DIR / "positive-words.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header.format(polarity="Positive", count=len(pos)))
        fh.write("\n".join(pos) + "\n")
    with open(OUT_DIR / "negative-words.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header.format(polarity="Negative", count=len(neg)))
        fh.write("\n".join(neg) + "\n")
    print(f"wrote {len(pos)} positive and {len(neg)} negative words to {OUT_DIR}")


if __name__ == "__main__":
    main()
