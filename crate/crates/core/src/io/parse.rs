//! Line-oriented model files.
//!
//! ```text
//! # comment
//! states: w1 w2
//! agent ann type pmd
//! relation:
//!   w1 -> w1 w2
//!   w2 -> {w1 w2}
//! agent bob type +d
//! operator:
//!   {w1} -> {w1}
//!   {w1 w2} -> {w1 w2}
//! ```
//!
//! Operator rows that are not listed map to `{}`. Relation blocks must give
//! every state's contour.

use std::sync::Arc;

use crate::duality::operator_from_relation;
use crate::engine::{Agent, GroupModel};
use crate::error::{Error, ParseError, Result};
use crate::model::{Event, KnowledgeOperator, PossibilityRelation, StateSpace, MAX_STATES};
use crate::types::RevisionType;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AgentBody {
    Relation(PossibilityRelation),
    Operator(KnowledgeOperator),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentBlock {
    pub name: String,
    pub revision_type: RevisionType,
    pub body: AgentBody,
    /// Line of the `agent` header.
    pub line: usize,
}

impl AgentBlock {
    pub fn operator(&self) -> KnowledgeOperator {
        match &self.body {
            AgentBody::Relation(p) => operator_from_relation(p),
            AgentBody::Operator(k) => k.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub line: usize,
    pub text: String,
}

/// A parsed file before any semantic validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub space: Arc<StateSpace>,
    pub agents: Vec<AgentBlock>,
    pub comments: Vec<Comment>,
}

impl ModelDocument {
    pub fn to_model(&self) -> Result<GroupModel> {
        let agents = self
            .agents
            .iter()
            .map(|b| Agent {
                name: b.name.clone(),
                operator: b.operator(),
                revision_type: b.revision_type,
            })
            .collect();
        GroupModel::new(Arc::clone(&self.space), agents)
    }
}

/// Parses and checks that every agent's operator lies in K1.
pub fn parse_model(text: &str) -> Result<GroupModel> {
    let model = parse_document(text)?.to_model()?;
    model.validate_operators()?;
    Ok(model)
}

pub fn parse_model_unvalidated(text: &str) -> Result<GroupModel> {
    parse_document(text)?.to_model()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Arrow,
    Colon,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, col, msg))
}

fn lex(line_no: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() || c == ',' => i += 1,
            '{' => {
                out.push(Token { tok: Tok::Open, col });
                i += 1;
            }
            '}' => {
                out.push(Token { tok: Tok::Close, col });
                i += 1;
            }
            ':' => {
                out.push(Token { tok: Tok::Colon, col });
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, col });
                i += 2;
            }
            '→' => {
                out.push(Token { tok: Tok::Arrow, col });
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len() {
                    let d = chars[i];
                    if d.is_whitespace() || matches!(d, ',' | '{' | '}' | ':' | '→')
                        || (d == '-' && chars.get(i + 1) == Some(&'>'))
                    {
                        break;
                    }
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word.is_empty() {
                    return Err(err(line_no, col, format!("unexpected character `{c}`")));
                }
                out.push(Token { tok: Tok::Word(word), col });
            }
        }
    }
    Ok(out)
}

struct Line {
    no: usize,
    tokens: Vec<Token>,
    /// Column just past the last character, for end-of-line errors.
    end: usize,
}

impl Line {
    fn word(&self, i: usize) -> Option<&str> {
        match self.tokens.get(i).map(|t| &t.tok) {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn col(&self, i: usize) -> usize {
        self.tokens.get(i).map_or(self.end, |t| t.col)
    }

    fn is_keyword_line(&self, keyword: &str) -> bool {
        self.word(0) == Some(keyword)
            && self.tokens.get(1).map(|t| &t.tok) == Some(&Tok::Colon)
            && self.tokens.len() == 2
    }
}

/// Reads `{a b}` (or a bare run of state names when braces are optional)
/// starting at token `i`; returns the event and the next token index.
fn read_event(space: &StateSpace, line: &Line, mut i: usize, braces: bool) -> Result<(Event, usize)> {
    let open = line.tokens.get(i).map(|t| &t.tok) == Some(&Tok::Open);
    if braces && !open {
        return Err(err(line.no, line.col(i), "expected `{`"));
    }
    if open {
        i += 1;
    }
    let mut event = Event::EMPTY;
    loop {
        match line.tokens.get(i).map(|t| &t.tok) {
            Some(Tok::Word(w)) => {
                let state = space
                    .index_of(w)
                    .ok_or_else(|| err(line.no, line.col(i), format!("unknown state `{w}`")))?;
                if event.contains(state) {
                    return Err(err(line.no, line.col(i), format!("state `{w}` listed twice")));
                }
                event = event | Event::singleton(state);
                i += 1;
            }
            Some(Tok::Close) if open => return Ok((event, i + 1)),
            None if !open => return Ok((event, i)),
            None => return Err(err(line.no, line.end, "missing `}`")),
            Some(_) => return Err(err(line.no, line.col(i), "unexpected symbol in event")),
        }
    }
}

fn expect_end(line: &Line, i: usize) -> Result<()> {
    if i < line.tokens.len() {
        Err(err(line.no, line.col(i), "unexpected trailing input"))
    } else {
        Ok(())
    }
}

fn expect_arrow(line: &Line, i: usize) -> Result<usize> {
    if line.tokens.get(i).map(|t| &t.tok) == Some(&Tok::Arrow) {
        Ok(i + 1)
    } else {
        Err(err(line.no, line.col(i), "expected `->`"))
    }
}

fn parse_states(line: &Line) -> Result<Arc<StateSpace>> {
    if line.word(0) != Some("states") || line.tokens.get(1).map(|t| &t.tok) != Some(&Tok::Colon) {
        return Err(err(line.no, line.col(0), "the first line must be `states: <name> ...`"));
    }
    let mut names: Vec<String> = Vec::new();
    for i in 2..line.tokens.len() {
        let name = line
            .word(i)
            .ok_or_else(|| err(line.no, line.col(i), "expected a state name"))?;
        if names.iter().any(|n| n == name) {
            return Err(err(line.no, line.col(i), format!("state `{name}` declared twice")));
        }
        names.push(name.to_string());
    }
    if names.is_empty() {
        return Err(err(line.no, line.end, "no states declared"));
    }
    if names.len() > MAX_STATES {
        return Err(err(
            line.no,
            line.col(2 + MAX_STATES),
            format!("at most {MAX_STATES} states are supported, got {}", names.len()),
        ));
    }
    StateSpace::new(names).map_err(|e| err(line.no, line.col(2), e.to_string()))
}

enum BlockKind {
    Relation,
    Operator,
}

struct PendingAgent {
    name: String,
    revision_type: RevisionType,
    line: usize,
    kind: Option<(BlockKind, usize)>,
    contours: Vec<Option<Event>>,
    rows: Vec<Option<Event>>,
}

impl PendingAgent {
    fn finish(self, space: &Arc<StateSpace>) -> Result<AgentBlock> {
        let body = match self.kind {
            None => {
                return Err(err(
                    self.line,
                    1,
                    format!("agent `{}` has no `relation:` or `operator:` block", self.name),
                ))
            }
            Some((BlockKind::Relation, header)) => {
                let contours = self
                    .contours
                    .iter()
                    .enumerate()
                    .map(|(w, c)| {
                        c.ok_or_else(|| {
                            err(
                                header,
                                1,
                                format!(
                                    "relation of agent `{}` does not list state `{}`",
                                    self.name,
                                    space.name(w)
                                ),
                            )
                        })
                    })
                    .collect::<Result<Vec<Event>>>()?;
                AgentBody::Relation(PossibilityRelation::from_contours(space, contours)?)
            }
            Some((BlockKind::Operator, _)) => {
                let table = self.rows.iter().map(|r| r.unwrap_or(Event::EMPTY)).collect();
                AgentBody::Operator(KnowledgeOperator::from_table(space, table)?)
            }
        };
        Ok(AgentBlock {
            name: self.name,
            revision_type: self.revision_type,
            body,
            line: self.line,
        })
    }
}

/// Syntax-level parse. Semantic checks on the operators are left to the caller.
pub fn parse_document(text: &str) -> Result<ModelDocument> {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let (body, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim().to_string())),
            None => (raw, None),
        };
        if let Some(text) = comment {
            comments.push(Comment { line: no, text });
        }
        let tokens = lex(no, body)?;
        if !tokens.is_empty() {
            lines.push(Line {
                no,
                tokens,
                end: body.chars().count() + 1,
            });
        }
    }
    let mut iter = lines.iter();
    let first = iter
        .next()
        .ok_or_else(|| err(1, 1, "empty model: expected `states: <name> ...`"))?;
    let space = parse_states(first)?;
    let mut agents: Vec<AgentBlock> = Vec::new();
    let mut current: Option<PendingAgent> = None;
    for line in iter {
        match line.word(0) {
            Some("states") if line.tokens.get(1).map(|t| &t.tok) == Some(&Tok::Colon) => {
                return Err(err(line.no, line.col(0), "`states:` may appear only once"));
            }
            Some("agent") => {
                if let Some(done) = current.take() {
                    agents.push(done.finish(&space)?);
                }
                let name = line
                    .word(1)
                    .ok_or_else(|| err(line.no, line.col(1), "expected an agent name"))?;
                if line.word(2) != Some("type") {
                    return Err(err(line.no, line.col(2), "expected `type <tag>`"));
                }
                let tag = line
                    .word(3)
                    .ok_or_else(|| err(line.no, line.col(3), "expected a revision type"))?;
                let revision_type: RevisionType = tag.parse().map_err(|_| {
                    err(
                        line.no,
                        line.col(3),
                        format!("unknown revision type `{tag}` (expected d, +d, d+d, pmd or dpmd)"),
                    )
                })?;
                expect_end(line, 4)?;
                if agents.iter().any(|a| a.name == name) {
                    return Err(err(line.no, line.col(1), format!("duplicate agent `{name}`")));
                }
                current = Some(PendingAgent {
                    name: name.to_string(),
                    revision_type,
                    line: line.no,
                    kind: None,
                    contours: vec![None; space.len()],
                    rows: vec![None; space.num_events()],
                });
            }
            _ => {
                let agent = current
                    .as_mut()
                    .ok_or_else(|| err(line.no, line.col(0), "expected `agent <name> type <tag>`"))?;
                if line.is_keyword_line("relation") || line.is_keyword_line("operator") {
                    if agent.kind.is_some() {
                        return Err(err(
                            line.no,
                            line.col(0),
                            format!("agent `{}` already has a block", agent.name),
                        ));
                    }
                    let kind = if line.word(0) == Some("relation") {
                        BlockKind::Relation
                    } else {
                        BlockKind::Operator
                    };
                    agent.kind = Some((kind, line.no));
                    continue;
                }
                match &agent.kind {
                    None => {
                        return Err(err(line.no, line.col(0), "expected `relation:` or `operator:`"));
                    }
                    Some((BlockKind::Relation, _)) => {
                        let name = line
                            .word(0)
                            .ok_or_else(|| err(line.no, line.col(0), "expected a state name"))?;
                        let w = space
                            .index_of(name)
                            .ok_or_else(|| err(line.no, line.col(0), format!("unknown state `{name}`")))?;
                        if agent.contours[w].is_some() {
                            return Err(err(line.no, line.col(0), format!("state `{name}` listed twice")));
                        }
                        let i = expect_arrow(line, 1)?;
                        let (contour, i) = read_event(&space, line, i, false)?;
                        expect_end(line, i)?;
                        agent.contours[w] = Some(contour);
                    }
                    Some((BlockKind::Operator, _)) => {
                        let (a, i) = read_event(&space, line, 0, true)?;
                        let i = expect_arrow(line, i)?;
                        let (ka, i) = read_event(&space, line, i, true)?;
                        expect_end(line, i)?;
                        let slot = &mut agent.rows[a.bits() as usize];
                        if slot.is_some() {
                            return Err(err(
                                line.no,
                                line.col(0),
                                format!("row {} listed twice", space.format_event(a)),
                            ));
                        }
                        *slot = Some(ka);
                    }
                }
            }
        }
    }
    if let Some(done) = current.take() {
        agents.push(done.finish(&space)?);
    }
    Ok(ModelDocument {
        space,
        agents,
        comments,
    })
}
