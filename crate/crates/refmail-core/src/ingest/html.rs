//! HTML-to-visible-text conversion for email bodies.
//!
//! Strips tags, drops `<script>`/`<style>`/`<head>` content entirely, and
//! drops elements hidden via inline style (`display:none`,
//! `visibility:hidden`, zero font size) while recording a diagnostic for
//! each hidden element. Decodes the common entities seen in mail bodies.

/// Result of one conversion pass.
#[derive(Debug, Clone, Default)]
pub struct HtmlText {
    pub text: String,
    /// One entry per dropped hidden element, e.g. `hidden element <div> dropped`.
    pub diagnostics: Vec<String>,
}

const SKIP_CONTENT_TAGS: &[&str] = &["script", "style", "noscript", "head", "template", "title"];

const BLOCK_TAGS: &[&str] = &[
    "p", "div", "br", "li", "ul", "ol", "tr", "td", "th", "table", "h1", "h2", "h3", "h4", "h5",
    "h6", "blockquote", "pre", "hr", "article", "section", "header", "footer",
];

fn is_void_tag(name: &str) -> bool {
    matches!(
        name,
        "br" | "hr" | "img" | "input" | "meta" | "link" | "area" | "base" | "col" | "embed"
            | "source" | "track" | "wbr"
    )
}

/// Inline-style hidden check: display:none, visibility:hidden, font-size:0.
fn style_hides(attrs: &str) -> bool {
    let lower = attrs.to_ascii_lowercase();
    let Some(style_start) = lower.find("style") else {
        return false;
    };
    // crude but robust: examine everything after `style`
    let style = &lower[style_start..];
    let squeezed: String = style.chars().filter(|c| !c.is_whitespace()).collect();
    squeezed.contains("display:none")
        || squeezed.contains("visibility:hidden")
        || squeezed.contains("font-size:0p")
        || squeezed.contains("font-size:0;")
        || squeezed.contains("font-size:0\"")
        || squeezed.contains("font-size:0'")
        || squeezed.ends_with("font-size:0")
        || squeezed.contains("opacity:0;")
        || squeezed.contains("opacity:0\"")
}

fn decode_entity(entity: &str) -> Option<char> {
    match entity {
        "amp" => Some('&'),
        "lt" => Some('<'),
        "gt" => Some('>'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        "nbsp" => Some(' '),
        "copy" => Some('©'),
        "mdash" => Some('—'),
        "ndash" => Some('–'),
        "hellip" => Some('…'),
        "rsquo" => Some('\u{2019}'),
        "lsquo" => Some('\u{2018}'),
        _ => {
            let num = entity.strip_prefix('#')?;
            let code = if let Some(hex) = num.strip_prefix('x').or_else(|| num.strip_prefix('X')) {
                u32::from_str_radix(hex, 16).ok()?
            } else {
                num.parse::<u32>().ok()?
            };
            char::from_u32(code)
        }
    }
}

fn tag_name(tag_body: &str) -> String {
    tag_body
        .trim_start_matches('/')
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Convert an HTML fragment to visible plain text.
pub fn html_to_text(html: &str) -> HtmlText {
    let mut out = String::with_capacity(html.len() / 2);
    let mut diagnostics = Vec::new();
    let bytes = html.as_bytes();
    let mut i = 0usize;
    // stack of (tag name, hidden) for open elements we care about
    let mut hidden_depth: Vec<String> = Vec::new();
    let mut skip_tag: Option<String> = None;

    while i < bytes.len() {
        let rest = &html[i..];
        if let Some(skip) = &skip_tag {
            // inside <script>/<style>: scan for the matching close tag
            if rest.len() >= skip.len() + 3 && rest[..2].eq_ignore_ascii_case("</") {
                let after = &rest[2..];
                if after.len() >= skip.len() && after[..skip.len()].eq_ignore_ascii_case(skip) {
                    if let Some(gt) = rest.find('>') {
                        i += gt + 1;
                        skip_tag = None;
                        continue;
                    }
                }
            }
            let ch = rest.chars().next().unwrap();
            i += ch.len_utf8();
            continue;
        }

        if rest.starts_with("<!--") {
            match rest.find("-->") {
                Some(end) => i += end + 3,
                None => break,
            }
            continue;
        }

        if rest.starts_with('<') {
            let Some(gt) = rest.find('>') else { break };
            let tag_body = &rest[1..gt];
            let name = tag_name(tag_body);
            let closing = tag_body.starts_with('/');
            let self_closing = tag_body.ends_with('/') || is_void_tag(&name);

            if !closing && SKIP_CONTENT_TAGS.contains(&name.as_str()) && !self_closing {
                skip_tag = Some(name.clone());
            } else if !closing && !self_closing && style_hides(tag_body) {
                if hidden_depth.is_empty() {
                    diagnostics.push(format!("hidden element <{name}> dropped"));
                }
                hidden_depth.push(name.clone());
            } else if closing && !hidden_depth.is_empty() {
                // pop the innermost matching open hidden element
                if let Some(pos) = hidden_depth.iter().rposition(|n| *n == name) {
                    hidden_depth.truncate(pos);
                }
            }

            if hidden_depth.is_empty() && BLOCK_TAGS.contains(&name.as_str()) {
                out.push(if name == "br" { '\n' } else { ' ' });
            }
            i += gt + 1;
            continue;
        }

        if rest.starts_with('&') {
            if let Some(semi) = rest[1..].find(';') {
                if semi <= 10 {
                    let entity = &rest[1..1 + semi];
                    if let Some(ch) = decode_entity(entity) {
                        if hidden_depth.is_empty() {
                            out.push(ch);
                        }
                        i += semi + 2;
                        continue;
                    }
                }
            }
        }

        let ch = rest.chars().next().unwrap();
        if hidden_depth.is_empty() {
            out.push(ch);
        }
        i += ch.len_utf8();
    }

    HtmlText {
        text: collapse_whitespace(&out),
        diagnostics,
    }
}

/// Collapse runs of spaces/tabs; keep single newlines as separators.
fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut last_space = true;
    for ch in s.chars() {
        if ch.is_whitespace() {
            if !last_space {
                out.push(' ');
                last_space = true;
            }
        } else {
            out.push(ch);
            last_space = false;
        }
    }
    while out.ends_with(' ') {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_keep_text() {
        let got = html_to_text("<p>Verify <a href=\"http://x\">here</a></p>");
        assert_eq!(got.text, "Verify here");
        assert!(got.diagnostics.is_empty());
    }

    #[test]
    fn script_and_style_dropped() {
        let got = html_to_text(
            "<html><head><style>p{color:red}</style></head><body><script>alert(1)</script>Hello <b>world</b></body></html>",
        );
        assert_eq!(got.text, "Hello world");
    }

    #[test]
    fn hidden_elements_dropped_with_diagnostic() {
        let got = html_to_text(
            "<div>visible</div><div style=\"display:none\">SECRET <span>inner</span></div><p>after</p>",
        );
        assert_eq!(got.text, "visible after");
        assert_eq!(got.diagnostics.len(), 1);
        assert!(got.diagnostics[0].contains("hidden element"));
    }

    #[test]
    fn zero_font_size_hidden() {
        let got = html_to_text("a<span style='font-size:0px'>ghost</span>b");
        assert_eq!(got.text, "ab");
        assert_eq!(got.diagnostics.len(), 1);
    }

    #[test]
    fn entities_decoded() {
        let got = html_to_text("Tom &amp; Jerry &lt;3 &#65;&#x42;");
        assert_eq!(got.text, "Tom & Jerry <3 AB");
    }

    #[test]
    fn block_tags_separate_words() {
        let got = html_to_text("<p>one</p><p>two</p>three<br>four");
        assert_eq!(got.text, "one two three four");
    }

    #[test]
    fn truncated_markup_is_total() {
        let got = html_to_text("<p>open <a");
        assert_eq!(got.text, "open");
        let got = html_to_text("<script>never closed");
        assert_eq!(got.text, "");
    }
}
