use multiplex_juggling::cards::render_card;
use multiplex_juggling::Card;

const SIX_BALL: &str = "arrival=6,1,2,2;departure=3,1,2,3,2;f=0,1,3,4";
const PASS_THROUGH: &str = "arrival=4,2,3;departure=4,2,3;f=1,2,3";

fn render(text: &str) -> String {
    render_card(&text.parse::<Card>().unwrap()).unwrap()
}

#[test]
fn six_ball_card_matches_golden() {
    assert_eq!(render(SIX_BALL), include_str!("golden/six_ball_card.txt"));
}

#[test]
fn pass_through_card_matches_golden() {
    assert_eq!(render(PASS_THROUGH), include_str!("golden/pass_through_card.txt"));
}
