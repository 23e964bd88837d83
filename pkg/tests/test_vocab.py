from adsage.events import (Event, Vocabulary, build_vocabularies, load_schema)

LOGON = load_schema("cert_logon")


def logon_event(key, ts, user, pc, activity="Logon"):
    return Event(key=key, timestamp=ts, source=user, destinations={"pc": (pc,)},
                 categorical={"activity": activity})


def test_sorted_insertion_with_reserved_unknown():
    v = Vocabulary.from_names(["B", "A"])
    assert v.index("A") == 1
    assert v.index("B") == 2
    assert v.index("missing") == 0
    assert v.size == 3
    assert v.name(0) == "<unk>"
    assert v.name(2) == "B"


def test_building_is_deterministic():
    events = [logon_event(0, 0.0, "zoe", "pc2"), logon_event(1, 1.0, "amy", "pc1")]
    first = build_vocabularies(events, LOGON)
    second = build_vocabularies(events, LOGON)
    assert first.spaces["user"].names == second.spaces["user"].names == ("amy", "zoe")
    assert first.spaces["pc"].names == ("pc1", "pc2")
    assert first.categorical["activity"].names == ("Logon",)


def test_vocabulary_is_pure_function_of_distinct_names():
    a = [logon_event(0, 0.0, "u1", "pc1"), logon_event(1, 1.0, "u2", "pc2")]
    b = [logon_event(0, 5.0, "u2", "pc2"), logon_event(1, 6.0, "u1", "pc1"),
         logon_event(2, 7.0, "u1", "pc1")]  # duplicates and different order
    assert build_vocabularies(a, LOGON).spaces["user"].names == \
        build_vocabularies(b, LOGON).spaces["user"].names


def test_unseen_name_maps_to_unknown():
    vocabs = build_vocabularies([logon_event(0, 0.0, "u1", "pc1")], LOGON)
    assert vocabs.spaces["pc"].index("pc-new") == 0


def test_shared_space_unions_sender_and_receivers():
    schema = load_schema("cert_email")
    e = Event(key=0, timestamp=0.0, source="c@x",
              destinations={"to": ("a@x",), "cc": ("b@x",), "bcc": ()},
              numeric={"size": 1.0}, text={"content": ""})
    vocabs = build_vocabularies([e], schema)
    assert vocabs.spaces["address"].names == ("a@x", "b@x", "c@x")


def test_fingerprint_tracks_content():
    v1 = Vocabulary.from_names(["a", "b"])
    v2 = Vocabulary.from_names(["a", "b"])
    v3 = Vocabulary.from_names(["a", "c"])
    assert v1.fingerprint() == v2.fingerprint()
    assert v1.fingerprint() != v3.fingerprint()
