#!/usr/bin/env python3
"""Writes the XP-week event fixtures and expected.json next to this file.

The expected figures are tallied here from the generation plan, independent
of the C++ analyzers.
"""
import json
import random
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

HERE = Path(__file__).resolve().parent
TZ = timezone(timedelta(hours=2))
DAYS = [date(2010, 8, 23) + timedelta(days=i) for i in range(5)]
DEVS = {"ws1": ("Alice", "Bob"), "ws2": ("Carol", "Dave"), "ws3": ("Erik", "Fiona"), "ws4": ("Gustav", "Hanna")}
IDS = {n: n.lower() for pair in DEVS.values() for n in pair}
SITE = {"alice": "luh", "bob": "luh", "carol": "luh", "dave": "luh", "lena": "luh", "clara": "luh",
        "erik": "tuc", "fiona": "tuc", "gustav": "tuc", "hanna": "tuc", "tom": "tuc"}
HANDLE = {p: f"{p}.{SITE[p]}" for p in SITE}
HANDLE["clara"] = "clara.customer"
EVERYONE = sorted(SITE)


def at(day, hh, mm=0):
    return datetime(day.year, day.month, day.day, hh, mm, tzinfo=TZ)


def iso(ts):
    return ts.isoformat(timespec="seconds")


# Status grid: one row per workstation, one column per hourly slot 09-17.
# O ok, S no update (stale), Q status without story id, D names a developer of
# another workstation (both workstations are flagged).
GRID = [
    ["OOQOOSOO", "OQOOSOOQ", "SOOQOOOO", "OOQOOSOQ"],
    ["OOODOOOO", "OOQOOOSO", "OOODOQOO", "OQOOOOOQ"],
    ["OOOOOOOO", "OOOOOOOO", "OOOOOOOO", "OOOOOOOO"],
    ["OOOOQOOO", "SOOOOOOO", "OOQOOOSO", "OOOQOOOQ"],
    ["OSOOQOOO", "OOOQOOSQ", "QOOOSOOO", "OOSQOOQO"],
]
STORIES = {"ws1": [1, 3, 5, 7, 13], "ws2": [2, 4, 6, 8, 14], "ws3": [9, 10, 11, 12, 15], "ws4": [16, 17, 17, 18, 18]}


def status_log():
    lines, tally = [], []
    for d, (day, rows) in enumerate(zip(DAYS, GRID)):
        counts = {"ok": 0, "temporal": 0, "qualitative": 0}
        for w, (ws, row) in enumerate(zip(DEVS, rows)):
            a, b = DEVS[ws]
            for slot, cls in enumerate(row):
                ts = at(day, 9 + slot, 5)
                if cls == "O":
                    text = f"US{STORIES[ws][d]}: {a} & {b}"
                elif cls == "Q":
                    text = f"{a} & {b}"
                elif cls == "D":
                    # ws3 claims Alice while ws1 still lists her.
                    text = f"US{STORIES[ws][d]}: Erik & Alice" if ws == "ws3" else f"US{STORIES[ws][d]}: {a} & {b}"
                else:
                    text = None
                if text is not None:
                    lines.append((ts, f'{iso(ts)} {ws} "{text}"'))
                counts[{"O": "ok", "Q": "qualitative", "S": "temporal", "D": "temporal"}[cls]] += 1
        tally.append({"day": day.isoformat(), **counts})
    # A line the monitor wrote without quoting; it must be reported, not dropped.
    broken = at(DAYS[0], 12, 30)
    lines.append((broken, f"{iso(broken)} ws2 status monitor restarted"))
    lines.sort(key=lambda x: x[0])
    return [l for _, l in lines], tally


COMMITS_DONE = [
    # day, hh, mm, ws, story, contact (minutes relative to commit) or None
    (0, 11, 0, "ws3", 9, +40),
    (0, 14, 0, "ws1", 1, -30),
    (0, 15, 0, "ws2", 2, -20),
    (1, 11, 0, "ws1", 3, -15),
    (1, 13, 0, "ws2", 4, -30),
    (1, 15, 0, "ws3", 10, -30),
    (2, 10, 30, "ws1", 5, -20),
    (2, 11, 30, "ws3", 11, -20),
    (2, 14, 0, "ws2", 6, -20),
    (2, 16, 0, "ws4", 17, None),
    (3, 11, 0, "ws1", 7, -25),
    (3, 13, 30, "ws2", 8, -15),
    (3, 15, 0, "ws3", 12, -40),
    (4, 10, 45, "ws1", 13, -20),
    (4, 12, 0, "ws2", 14, -30),
    (4, 14, 15, "ws3", 15, -10),
]


def vcs_and_contacts():
    commits, contacts = [], []
    for d, hh, mm, ws, story, rel in COMMITS_DONE:
        a, b = DEVS[ws]
        ts = at(DAYS[d], hh, mm)
        commits.append((ts, IDS[a], f"US{story}|{a},{b}|[done] finish story {story}"))
        if rel is not None:
            start = ts + timedelta(minutes=rel)
            people = [IDS[a], IDS[b], "clara"]
            contacts.append({
                "kind": "customer_contact", "start": start, "end": start + timedelta(minutes=12),
                "participants": people, "story_id": story,
                "medium_id": "face-to-face" if SITE[IDS[a]] == "luh" else "skype-call",
                "payload": {"text": f"demo of US{story}"},
            })
    # Work-in-progress commits before each completion.
    for d, hh, mm, ws, story, _ in COMMITS_DONE:
        a, b = DEVS[ws]
        for k, back in enumerate((150, 75)):
            ts = at(DAYS[d], hh, mm) - timedelta(minutes=back)
            commits.append((ts, IDS[b], f"US{story}|{a},{b}|step {k + 1} of story {story}"))
    commits.append((at(DAYS[1], 17, 40), "tom", "fix nightly build script"))
    commits.sort(key=lambda c: c[0])

    text = []
    sep = "-" * 72
    text.append(sep)
    for rev, (ts, author, msg) in enumerate(commits, start=101):
        stamp = ts.strftime("%Y-%m-%d %H:%M:%S %z (%a, %d %b %Y)")
        text += [f"r{rev} | {author} | {stamp} | 1 line", "", msg, sep]

    # Observer notes without a story id; none involves a pair member before
    # their first completion.
    contacts.append({"kind": "customer_contact", "start": at(DAYS[1], 16, 30), "end": at(DAYS[1], 16, 45),
                     "participants": ["lena", "clara"], "medium_id": "face-to-face",
                     "payload": {"text": "backlog grooming"}})
    contacts.sort(key=lambda c: c["start"])
    lines = []
    for i, c in enumerate(contacts, start=1):
        c = dict(c)
        c["id"] = f"contact-{i}"
        c["start"] = iso(c["start"])
        c["end"] = iso(c["end"])
        lines.append(json.dumps({k: c[k] for k in ("id", "kind", "start", "end", "participants", *(
            x for x in ("story_id", "medium_id", "payload") if x in c))}))
    lines.append(json.dumps({"id": "note-1", "kind": "manual_observation", "start": iso(at(DAYS[2], 12, 0)),
                             "participants": ["gustav", "hanna"], "payload": {"text": "pair switch at tuc"}}))
    done = len(COMMITS_DONE)
    tally = {"completed": done,
             "ok": sum(1 for c in COMMITS_DONE if c[5] is not None and c[5] <= 0),
             "temporal": sum(1 for c in COMMITS_DONE if c[5] is not None and c[5] > 0),
             "qualitative": sum(1 for c in COMMITS_DONE if c[5] is None)}
    return text, lines, len(commits), tally


MEETINGS = [("stand-up", 9, 0, 15, range(4)),
            ("wrap-up", 17, 0, 20, range(5)),
            ("planning game", 9, 30, 45, (0, 1, 3)),
            ("acceptance test of iteration", 15, 0, 60, (4,))]


def meetings():
    events = []
    for name, hh, mm, length, days in MEETINGS:
        for d in days:
            start = at(DAYS[d], hh, mm) + timedelta(minutes=2)
            events.append((start, name, length))
    events.sort()
    lines = []
    for i, (start, name, length) in enumerate(events, start=1):
        lines.append(json.dumps({"id": f"meeting-{i}", "kind": "meeting", "start": iso(start),
                                 "end": iso(start + timedelta(minutes=length)), "participants": EVERYONE,
                                 "site_span": "cross_site", "medium_id": "hq-video", "payload": {"name": name}}))
    return lines


def calls():
    rng = random.Random(2010)
    luh = ["alice", "bob", "carol", "dave"]
    tuc = ["erik", "fiona", "gustav", "hanna"]
    rows = []
    n_calls = n_chats = 0
    for day in DAYS:
        for _ in range(8):
            start = at(day, 10, 0) + timedelta(minutes=rng.randrange(0, 390))
            people = [rng.choice(luh), rng.choice(tuc)]
            end = start + timedelta(minutes=rng.randrange(3, 40))
            rows.append((start, f"call,{iso(start)},{iso(end)},{HANDLE[people[0]]};{HANDLE[people[1]]},skype-call"))
            n_calls += 1
        for _ in range(6):
            start = at(day, 9, 30) + timedelta(minutes=rng.randrange(0, 420))
            people = [rng.choice(luh), rng.choice(tuc)]
            for k in range(rng.randrange(1, 5)):
                ts = start + timedelta(minutes=3 * k)
                rows.append((ts, f"chat,{iso(ts)},,{HANDLE[people[0]]};{HANDLE[people[1]]},skype-chat"))
                n_chats += 1
    rows.sort(key=lambda r: r[0])
    lines = [r for _, r in rows]
    lines.insert(10, f"chat,{iso(at(DAYS[0], 11, 11))},,guest.visitor;{HANDLE['tom']},skype-chat")
    n_chats += 1
    lines.insert(25, "call,2010-08-23T25:00:00+02:00,,alice.luh")
    return lines, n_calls, n_chats


def main():
    status, status_tally = status_log()
    svn, contacts, n_commits, acceptance = vcs_and_contacts()
    meeting_lines = meetings()
    call_lines, n_calls, n_chats = calls()

    (HERE / "status.log").write_text("\n".join(status) + "\n")
    (HERE / "svn.log").write_text("\n".join(svn) + "\n")
    (HERE / "contacts.jsonl").write_text("\n".join(contacts) + "\n")
    (HERE / "meetings.jsonl").write_text("\n".join(meeting_lines) + "\n")
    (HERE / "calls.log").write_text("\n".join(call_lines) + "\n")

    totals = {k: sum(d[k] for d in status_tally) for k in ("ok", "temporal", "qualitative")}
    expected = {
        "status": {"per_day": status_tally, "totals": totals, "events": len(status) - 1, "errors": 1},
        "acceptance": acceptance,
        "scheduled": {"expected": 13, "held_on_schedule": 11, "missing": 2},
        "sources": {
            "status.log": {"records": len(status), "events": len(status) - 1, "errors": 1},
            "svn.log": {"records": n_commits, "events": n_commits, "errors": 0},
            "calls.log": {"records": len(call_lines), "events": n_calls + n_chats, "errors": 1},
            "contacts.jsonl": {"records": len(contacts), "events": len(contacts), "errors": 0},
            "meetings.jsonl": {"records": len(meeting_lines), "events": len(meeting_lines), "errors": 0},
        },
        "kinds": {"call": n_calls, "chat": n_chats, "status_change": len(status) - 1, "commit": n_commits,
                  "meeting": len(meeting_lines), "customer_contact": len(contacts) - 1, "manual_observation": 1},
    }
    (HERE / "expected.json").write_text(json.dumps(expected, indent=2) + "\n")


if __name__ == "__main__":
    main()
